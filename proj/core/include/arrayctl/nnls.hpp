#pragma once

#include "arrayctl/linalg.hpp"

namespace arrayctl {

struct NnlsResult {
  Vector x;
  double residual = 0.0;
  int iterations = 0;
};

/// Lawson-Hanson active-set solver for min |m x - v| subject to x >= 0.
///
/// The entering column is the one with the largest dual value, ties broken by lowest index,
/// so results are reproducible. Throws Error(numerical_failure) when more than
/// `max_iterations` (default 50 * columns) active-set changes are needed.
NnlsResult nnls(const Matrix& m, const Vector& v, int max_iterations = 0);

}  // namespace arrayctl
