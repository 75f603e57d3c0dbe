#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arrayctl/array_model.hpp"

namespace arrayctl::testing {

/// Seeded generator whose draws do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p_true = 0.5) { return uniform() < p_true; }

 private:
  std::mt19937_64 engine_;
};

/// q x p matrix whose columns are e_i - e_j with i != j.
Matrix random_unit_incidence(Rng& rng, int q, int p);

/// Random array with n <= max_n, q <= max_q, p <= max_p and B = unit incidence (x) random
/// n-vectors. A mixes generic, zero, triangular (repeated, possibly defective eigenvalues) and
/// rotation-block matrices. Draws whose spectrum is ambiguous at default tolerances are
/// redrawn, so every returned spec can be analyzed.
ArraySpec random_array(Rng& rng, int max_n = 3, int max_q = 4, int max_p = 5);

std::vector<ArraySpec> random_array_corpus(int count, std::uint64_t seed);

/// Random class-G_1 matrix with planted lineality: columns in 1^perp, some with their
/// negations or with a negated sum of other columns.
Matrix random_cone(Rng& rng, int max_q = 6, int max_cols = 8);

}  // namespace arrayctl::testing
