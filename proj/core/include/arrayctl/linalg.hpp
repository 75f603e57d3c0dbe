#pragma once

#include <complex>

#include <Eigen/Dense>

namespace arrayctl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every analysis.
///
/// `rank` is relative to the largest singular value (floored at one), `cone` bounds the
/// nonnegative least-squares residual relative to 1 + |target|, `eig` scales with
/// 1 + spectral radius, and `zero` is an absolute bound on column sums of B.
struct Tolerances {
  double rank = 1e-9;
  double cone = 1e-8;
  double eig = 1e-8;
  double zero = 1e-9;
  double residual = 1e-7;
};

/// A pair of distinct vertices, 1-based.
struct VertexPair {
  int k = 1;
  int l = 2;

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
};

Matrix kron(const Matrix& a, const Matrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Number of singular values above rel_tol * max(1, sigma_max).
Index numerical_rank(const CMatrix& m, double rel_tol);
Index numerical_rank(const Matrix& m, double rel_tol);

/// Orthonormal basis of the right null space: right singular vectors whose singular value
/// is at most abs_tol (zero-padded singular values count as null).
CMatrix null_space(const CMatrix& m, double abs_tol);
Matrix null_space(const Matrix& m, double abs_tol);

/// Orthonormal basis of range(m) under the relative rank threshold.
Matrix orthonormal_range(const Matrix& m, double rel_tol);

Matrix expm(const Matrix& a);

/// Integral of exp(a s) ds over [0, h].
Matrix expm_integral(const Matrix& a, double h);

/// (e_k - e_l) (x) I_n for 1-based k, l.
Matrix pair_frame(int q, int n, VertexPair pair);

bool is_real(const CMatrix& m, double tol = 0.0);

}  // namespace arrayctl
