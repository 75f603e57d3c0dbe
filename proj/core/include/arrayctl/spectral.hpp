#pragma once

#include <vector>

#include "arrayctl/linalg.hpp"

namespace arrayctl {

/// One distinct eigenvalue mu of A^T together with its invariant-subspace data.
///
/// V spans null(A^T - mu I) and U spans null((A^T - mu I)^{n_k}); both have orthonormal
/// columns and are real (zero imaginary part) when mu is real. A_k satisfies
/// A^T U = U A_k^H, and Lambda = A_k - conj(mu) I is nilpotent.
struct EigComponent {
  Complex mu;
  int alg_mult = 0;
  int geo_mult = 0;
  bool is_real = false;
  CMatrix V;
  CMatrix U;
  CMatrix A_k;
  CMatrix Lambda;
};

struct OrderEntry {
  int index = 0;  // 1-based position in the ordering
  double re = 0.0;
  double im = 0.0;
};

/// Distinct eigenvalues in decreasing real part. A real eigenvalue precedes every non-real
/// eigenvalue sharing its real part; conjugate pairs are adjacent, positive imaginary part
/// first, and equal real parts among non-real values are broken by |Im| ascending.
struct Spectrum {
  std::vector<EigComponent> components;
  std::vector<OrderEntry> order_certificate;
  double tol_abs = 0.0;  // clustering radius actually used

  int size() const { return static_cast<int>(components.size()); }
};

/// Clusters the eigenvalues of A^T. Only mu, alg_mult and is_real are filled in.
/// Throws Error(ill_conditioned_spectrum) when two clusters lie within [tol, 2 tol).
Spectrum distinct_eigenvalues(const Matrix& A, double tol_eig = Tolerances{}.eig);

/// Orthonormal basis of null(A^T - mu I); `tol_abs` is the singular-value threshold.
CMatrix eigenvector_basis(const Matrix& A, Complex mu, double tol_abs);

/// Orthonormal basis of null((A^T - mu I)^{n_k}), grown one power at a time.
CMatrix generalized_basis(const Matrix& A, Complex mu, int n_k, double tol_abs);

struct Restriction {
  CMatrix A_k;
  CMatrix Lambda;
};

Restriction restriction(const Matrix& A, const CMatrix& U, Complex mu, double tol_res);

/// Full decomposition: clustering plus V, U, A_k, Lambda for every component.
Spectrum compute_spectrum(const Matrix& A, const Tolerances& tol = {});

}  // namespace arrayctl
