#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrayctl/array_model.hpp"
#include "arrayctl/controllability.hpp"

namespace arrayctl {

/// Brute-force cross-checks. None of these reuse the eigenvalue-graph machinery.

struct OracleVerdict {
  std::string name;
  std::optional<VertexPair> pair;
  std::optional<bool> agrees;  // empty when no comparable verdict exists
  std::string detail;
  std::optional<Vector> witness;
};

/// rank [B_r  A_r B_r  ...  A_r^{n-1} B_r] == (q - 1) n for the reduced pair.
bool kalman_reduced(const ArraySpec& spec, const Tolerances& tol = {});

/// kalman_reduced plus, for every real eigenvalue, a simplex feasibility test that the cone of
/// [I_{q-1} (x) V^T] B_r contains every signed unit vector.
bool brammer_positive(const ArraySpec& spec, const Tolerances& tol = {});

/// Direct rank test on [W | (e_k - e_l) (x) I_n].
bool pairwise_range(const ArraySpec& spec, VertexPair pair, const Tolerances& tol = {});

enum class PathQuery { connected, strong, kl, strong_kl };

/// Breadth-first search on a unit incidence matrix; column e_i - e_j is the arc i -> j.
/// Throws Error(domain) for any other column.
bool path_oracle(const Matrix& G, PathQuery query, VertexPair pair = {});

/// Chebyshev-Lobatto points on [0, 4 / max(1, max |Re mu|)], endpoints included.
std::vector<double> default_grid(const Matrix& A, int points = 64);

struct FalsifierOptions {
  std::vector<double> grid;  // empty selects default_grid
  int attempts = 50;
  std::uint64_t seed = 0;
  double lambda = 0.1;
  double min_pair_fraction = 0.1;
  int max_evaluations = 4000;
};

/// Seeded search for eta with B^T exp(A^T t) eta <= 0 on the grid and a pair component of at
/// least min_pair_fraction |eta|. A returned witness has been re-checked on a 10x denser grid
/// and refutes positive (k,l)-controllability; an empty result proves nothing.
std::optional<Vector> polar_falsifier(const ArraySpec& spec, VertexPair pair,
                                      const FalsifierOptions& options = {});

struct ReachProblem {
  ArraySpec spec;
  VertexPair pair;
  double horizon = 2.0;
  int steps = 20;
  std::vector<Vector> targets;
};

/// Targets +-(e_k - e_l) (x) e_j for j = 1..n.
ReachProblem make_reach_problem(const ArraySpec& spec, VertexPair pair, double horizon, int steps);

struct ReachResult {
  Vector target;
  double residual = 0.0;
  bool hit = false;
};

/// Piecewise-constant nonnegative inputs on `steps` intervals, exact zero-order hold; the
/// distance of each target to the reachable cone is found by nonnegative least squares.
/// Hits are evidence, not proof.
std::vector<ReachResult> reach_simulator(const ReachProblem& problem, double tol_hit = 1e-6);

struct OracleOptions {
  int attempts = 50;
  std::uint64_t seed = 0;
  double horizon = 2.0;
  int steps = 20;
  double tol_hit = 1e-6;
};

/// Runs every applicable oracle against a finished report. Falsifier and reach checks run
/// for the report's pairs only.
std::vector<OracleVerdict> run_oracles(const AnalysisReport& report, const OracleOptions& options = {});

}  // namespace arrayctl
