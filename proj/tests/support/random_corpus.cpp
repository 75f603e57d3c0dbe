#include "random_corpus.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "arrayctl/errors.hpp"
#include "arrayctl/spectral.hpp"

namespace arrayctl::testing {

double Rng::normal() {
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * uniform());
}

Matrix random_unit_incidence(Rng& rng, int q, int p) {
  Matrix g = Matrix::Zero(q, p);
  for (int s = 0; s < p; ++s) {
    const int i = rng.integer(0, q - 1);
    int j = rng.integer(0, q - 2);
    if (j >= i) ++j;
    g(i, s) = 1.0;
    g(j, s) = -1.0;
  }
  return g;
}

namespace {

Matrix random_a(Rng& rng, int n) {
  Matrix a = Matrix::Zero(n, n);
  switch (rng.integer(0, 4)) {
    case 0:  // generic
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
      }
      break;
    case 1:  // zero
      break;
    case 2:  // upper triangular with small integer diagonal: repeated and defective cases
      for (int i = 0; i < n; ++i) {
        a(i, i) = rng.integer(-1, 1);
        for (int j = i + 1; j < n; ++j) a(i, j) = rng.integer(-1, 1);
      }
      break;
    case 3:  // rotation block plus a real mode
      if (n >= 2) {
        const double w = 0.5 + rng.uniform();
        a(0, 1) = w;
        a(1, 0) = -w;
        if (n == 3) a(2, 2) = rng.integer(-1, 1);
      } else {
        a(0, 0) = rng.integer(-1, 1);
      }
      break;
    default:  // small integer entries
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = rng.integer(-2, 2);
      }
      break;
  }
  return a;
}

Vector random_b(Rng& rng, int n) {
  Vector b = Vector::Zero(n);
  if (rng.coin(0.3)) {
    b(rng.integer(0, n - 1)) = rng.coin() ? 1.0 : -1.0;
  } else {
    for (int r = 0; r < n; ++r) b(r) = rng.normal();
  }
  return b;
}

}  // namespace

ArraySpec random_array(Rng& rng, int max_n, int max_q, int max_p) {
  while (true) {
    const int n = rng.integer(1, max_n);
    const int q = rng.integer(2, max_q);
    const int p = rng.integer(1, max_p);
    const Matrix a = random_a(rng, n);
    try {
      compute_spectrum(a);
    } catch (const Error&) {
      continue;
    }
    const Matrix g = random_unit_incidence(rng, q, p);
    Matrix b = Matrix::Zero(static_cast<Index>(q) * n, p);
    for (int s = 0; s < p; ++s) {
      const Vector v = random_b(rng, n);
      for (int i = 0; i < q; ++i) b.block(static_cast<Index>(i) * n, s, n, 1) = g(i, s) * v;
    }
    return ArraySpec::from_incidence("random", a, q, b);
  }
}

std::vector<ArraySpec> random_array_corpus(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ArraySpec> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_array(rng));
    out.back().name = "random-" + std::to_string(i);
  }
  return out;
}

Matrix random_cone(Rng& rng, int max_q, int max_cols) {
  const int q = rng.integer(2, max_q);
  const int base = rng.integer(1, max_cols);
  std::vector<Vector> cols;
  for (int c = 0; c < base; ++c) {
    Vector v(q);
    if (rng.coin(0.5)) {
      v.setZero();
      const int i = rng.integer(0, q - 1);
      int j = rng.integer(0, q - 2);
      if (j >= i) ++j;
      v(i) = 1.0;
      v(j) = -1.0;
    } else {
      for (int r = 0; r < q; ++r) v(r) = rng.integer(-3, 3);
      v.array() -= v.mean();
    }
    cols.push_back(v);
  }
  const size_t planted = cols.size();
  for (size_t c = 0; c < planted; ++c) {
    if (rng.coin(0.25)) cols.push_back(-cols[c]);
  }
  if (planted >= 2 && rng.coin(0.3)) cols.push_back(-(cols[0] + cols[1]));
  Matrix m(q, static_cast<Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Index>(c)) = cols[c];
  return m;
}

}  // namespace arrayctl::testing
