#include "arrayctl_cli/corpus.hpp"

#include <algorithm>

namespace arrayctl::cli {

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> init) {
  const auto r = static_cast<Index>(init.size());
  const auto c = static_cast<Index>(init.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : init) {
    Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix triangle() { return rows({{1, 0, -1}, {-1, 1, 0}, {0, -1, 1}}); }

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"watertanks",     "watertanks-ring",
                                              "oscillators-a",  "oscillators-b",
                                              "counterexample-23", "integrator-chain-ring"};
  return names;
}

std::optional<ArraySpec> example(const std::string& name) {
  if (name == "watertanks") return watertanks();
  if (name == "watertanks-ring") return watertanks_ring();
  if (name == "oscillators-a") return oscillators('a');
  if (name == "oscillators-b") return oscillators('b');
  if (name == "counterexample-23") return counterexample_23();
  if (name == "integrator-chain-ring") return integrator_chain_ring();
  return std::nullopt;
}

ArraySpec watertanks() {
  return ArraySpec::from_incidence("watertanks", Matrix::Zero(1, 1), 3,
                                   rows({{1, 0}, {-1, 1}, {0, -1}}));
}

ArraySpec watertanks_ring() {
  return ArraySpec::from_incidence("watertanks-ring", Matrix::Zero(1, 1), 3, triangle());
}

ArraySpec oscillators(char variant) {
  // Capacitance matrix of the five-node ladder; its inverse is min(i,j)(6-max(i,j))/6.
  Matrix c = Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    c(i, i) = 2.0;
    if (i + 1 < 5) c(i, i + 1) = c(i + 1, i) = -1.0;
  }
  Matrix c_inv(5, 5);
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      c_inv(i - 1, j - 1) = std::min(i, j) * (6.0 - std::max(i, j)) / 6.0;
    }
  }

  Matrix a = Matrix::Zero(10, 10);
  a.topRightCorner(5, 5) = -c_inv;
  a.bottomLeftCorner(5, 5) = Matrix::Identity(5, 5);

  auto drive = [&](int node) {
    Vector b = Vector::Zero(10);
    b.head(5) = c_inv.col(node - 1);
    return b;
  };
  const Vector b11 = drive(2);
  const Vector b22 = drive(3);
  const Vector b33 = drive(variant == 'a' ? 5 : 4);

  Matrix inc = Matrix::Zero(30, 3);
  inc.block(0, 0, 10, 1) = b11;
  inc.block(10, 0, 10, 1) = -b11;
  inc.block(10, 1, 10, 1) = b22;
  inc.block(20, 1, 10, 1) = -b22;
  inc.block(0, 2, 10, 1) = -b33;
  inc.block(20, 2, 10, 1) = b33;
  return ArraySpec::from_incidence(std::string("oscillators-") + variant, a, 3, inc);
}

ArraySpec counterexample_23() {
  const Matrix a = rows({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  const Matrix inc = rows({{0, 0, 0},
                           {0, 0, -1},
                           {1, 0, -1},
                           {0, 0, 0},
                           {0, 1, 0},
                           {0, 0, 0},
                           {-1, 0, 0},
                           {0, 0, 0},
                           {0, -1, 0},
                           {0, 0, 1},
                           {0, 0, 1},
                           {0, 0, 0}});
  return ArraySpec::from_incidence("counterexample-23", a, 3, inc);
}

ArraySpec integrator_chain_ring(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  Vector last = Vector::Zero(n);
  last(n - 1) = 1.0;
  return ArraySpec::from_incidence("integrator-chain-ring", a, 3, kron(triangle(), Matrix(last)));
}

}  // namespace arrayctl::cli
