#pragma once

#include <string>
#include <vector>

#include "arrayctl/linalg.hpp"

namespace arrayctl {

/// An array of q identical n-th order systems driven by p scalar relative inputs.
///
/// The input vectors B_{i,sigma} are stored stacked as the (q n) x p incidence matrix `B`;
/// block (i, sigma) occupies rows [i n, (i + 1) n) of column sigma. Indices in the C++ API
/// are 0-based; reports and the CLI are 1-based.
struct ArraySpec {
  std::string name;
  int n = 0;
  int q = 0;
  int p = 0;
  Matrix A;
  Matrix B;

  Vector block(int i, int sigma) const;

  /// blocks[i][sigma] is the n-vector B_{i,sigma}. Throws Error(dimension) on ragged input.
  static ArraySpec from_blocks(std::string name, Matrix A,
                               const std::vector<std::vector<Vector>>& blocks);
  static ArraySpec from_incidence(std::string name, Matrix A, int q, Matrix B);
};

enum class ViolationKind { dimension, column_sum, non_finite };

struct Violation {
  ViolationKind kind;
  std::string location;
  double magnitude = 0.0;
  int sigma = 0;  // 1-based input index for column_sum violations, 0 otherwise
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

ValidationReport validate_array(const ArraySpec& spec, double tol_zero = Tolerances{}.zero);

/// Orthonormal basis of the complement of 1_q: a Householder reflection mapping e_1 to
/// 1_q / sqrt(q), with its first column dropped. Deterministic for fixed q.
Matrix disagreement_basis(int q);

struct BigOperators {
  Matrix Abig;  // I_q (x) A
  Matrix Bbig;  // stacked incidence
  Vector S;     // 1_q / sqrt(q)
  Matrix D;     // q x (q - 1)
  Matrix Ared;  // I_{q-1} (x) A
  Matrix Bred;  // (D^T (x) I_n) Bbig
};

/// Throws Error(domain) when the array fails validation.
BigOperators build_big(const ArraySpec& spec, double tol_zero = Tolerances{}.zero);

}  // namespace arrayctl
