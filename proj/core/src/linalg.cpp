#include "arrayctl/linalg.hpp"

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace arrayctl {

namespace {

template <typename Mat>
Index rank_impl(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double threshold = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  return static_cast<Index>((s.array() > threshold).count());
}

template <typename Mat>
Mat null_impl(const Mat& m, double abs_tol) {
  const Index cols = m.cols();
  if (cols == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > abs_tol) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Index numerical_rank(const CMatrix& m, double rel_tol) { return rank_impl(m, rel_tol); }

Index numerical_rank(const Matrix& m, double rel_tol) { return rank_impl(m, rel_tol); }

CMatrix null_space(const CMatrix& m, double abs_tol) { return null_impl(m, abs_tol); }

Matrix null_space(const Matrix& m, double abs_tol) { return null_impl(m, abs_tol); }

Matrix orthonormal_range(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double threshold = rel_tol * std::max(1.0, s(0));
  const Index rank = static_cast<Index>((s.array() > threshold).count());
  return svd.matrixU().leftCols(rank);
}

Matrix expm(const Matrix& a) { return a.exp(); }

Matrix expm_integral(const Matrix& a, double h) {
  // exp([[a, I], [0, 0]] h) carries the integral in its upper-right block.
  const Index n = a.rows();
  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = a * h;
  aug.topRightCorner(n, n) = Matrix::Identity(n, n) * h;
  return expm(aug).topRightCorner(n, n);
}

Matrix pair_frame(int q, int n, VertexPair pair) {
  Matrix f = Matrix::Zero(static_cast<Index>(q) * n, n);
  f.block(static_cast<Index>(pair.k - 1) * n, 0, n, n) = Matrix::Identity(n, n);
  f.block(static_cast<Index>(pair.l - 1) * n, 0, n, n) = -Matrix::Identity(n, n);
  return f;
}

bool is_real(const CMatrix& m, double tol) {
  if (m.size() == 0) return true;
  return m.imag().cwiseAbs().maxCoeff() <= tol;
}

}  // namespace arrayctl
