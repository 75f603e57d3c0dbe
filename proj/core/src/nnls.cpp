#include "arrayctl/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "arrayctl/errors.hpp"

namespace arrayctl {

namespace {

Vector solve_passive(const Matrix& m, const Vector& v, const std::vector<bool>& passive) {
  std::vector<Index> cols;
  for (Index j = 0; j < m.cols(); ++j) {
    if (passive[static_cast<size_t>(j)]) cols.push_back(j);
  }
  Vector z = Vector::Zero(m.cols());
  if (cols.empty()) return z;
  Matrix sub(m.rows(), static_cast<Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Index>(c)) = m.col(cols[c]);
  const Vector sol = sub.completeOrthogonalDecomposition().solve(v);
  for (size_t c = 0; c < cols.size(); ++c) z(cols[c]) = sol(static_cast<Index>(c));
  return z;
}

}  // namespace

NnlsResult nnls(const Matrix& m, const Vector& v, int max_iterations) {
  const Index c = m.cols();
  NnlsResult out;
  out.x = Vector::Zero(c);
  if (c == 0 || m.rows() == 0) {
    out.residual = v.norm();
    return out;
  }
  const int cap = max_iterations > 0 ? max_iterations : 50 * static_cast<int>(std::max<Index>(c, 1));
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(m.norm(), 1e-300);
  const double dual_tol = 10.0 * eps * static_cast<double>(std::max(m.rows(), c)) * scale *
                          std::max(v.norm(), 1.0);

  std::vector<bool> passive(static_cast<size_t>(c), false);
  std::vector<bool> blocked(static_cast<size_t>(c), false);
  Vector& x = out.x;
  Vector w = m.transpose() * (v - m * x);

  int iterations = 0;
  while (true) {
    Index t = -1;
    double best = dual_tol;
    for (Index j = 0; j < c; ++j) {
      const auto js = static_cast<size_t>(j);
      if (passive[js] || blocked[js]) continue;
      if (w(j) > best) {
        best = w(j);
        t = j;
      }
    }
    if (t < 0) break;
    if (++iterations > cap) {
      throw Error(ErrorKind::numerical_failure, "nonnegative least squares exceeded iteration cap");
    }

    passive[static_cast<size_t>(t)] = true;
    Vector z = solve_passive(m, v, passive);
    if (z(t) <= 0.0) {
      // Column t is numerically dependent on the passive set; skip it until x changes.
      passive[static_cast<size_t>(t)] = false;
      blocked[static_cast<size_t>(t)] = true;
      continue;
    }

    while (true) {
      bool feasible = true;
      for (Index j = 0; j < c; ++j) {
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        x = z;
        break;
      }
      if (++iterations > cap) {
        throw Error(ErrorKind::numerical_failure,
                    "nonnegative least squares exceeded iteration cap");
      }
      double alpha = 1.0;
      for (Index j = 0; j < c; ++j) {
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - z(j)));
        }
      }
      x += alpha * (z - x);
      for (Index j = 0; j < c; ++j) {
        if (passive[static_cast<size_t>(j)] && x(j) <= eps * std::max(1.0, x.cwiseAbs().maxCoeff())) {
          passive[static_cast<size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
      z = solve_passive(m, v, passive);
    }

    std::fill(blocked.begin(), blocked.end(), false);
    w = m.transpose() * (v - m * x);
  }

  for (Index j = 0; j < c; ++j) x(j) = std::max(x(j), 0.0);
  out.residual = (m * x - v).norm();
  out.iterations = iterations;
  return out;
}

}  // namespace arrayctl
