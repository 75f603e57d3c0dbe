#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrayctl/array_model.hpp"
#include "arrayctl/genographe.hpp"
#include "arrayctl/spectral.hpp"

namespace arrayctl {

enum class GraphKind { v_graph, w_graph, q_graph };

std::string to_string(GraphKind kind);

struct PairFlags {
  VertexPair pair;
  std::optional<bool> kl_connected;
  std::optional<bool> strongly_kl_connected;  // real mu only
};

/// One row of the per-eigenvalue table. Strong flags are only set for real eigenvalues.
struct EigGraphVerdict {
  int kappa = 0;  // 1-based
  Complex mu;
  GraphKind kind = GraphKind::v_graph;
  std::optional<bool> connected;
  std::optional<bool> strongly_connected;
  std::vector<PairFlags> pairs;
  bool marginal = false;

  const PairFlags* find(VertexPair pair) const;
};

struct IndexStep {
  int kappa = 0;
  std::vector<int> I;        // 1-based input indices
  std::vector<int> I_minus;  // empty for non-real mu
  std::optional<int> Q_dim;  // lineality dimension, real mu only
};

using IndexRecursionTrace = std::vector<IndexStep>;

struct QGraphs {
  std::vector<GenGraph> graphs;  // graph kappa holds the columns sigma in I_kappa
  IndexRecursionTrace trace;
};

struct Assumption1 {
  bool holds = true;
  std::optional<int> violated_at;  // 1-based kappa
};

struct Decision {
  bool value = false;
  std::vector<EigGraphVerdict> per_kappa;
  bool marginal = false;
};

struct PositivePairwiseDecision {
  bool value = false;
  bool conditional = true;
  std::vector<EigGraphVerdict> per_kappa;
  bool marginal = false;
};

struct PairVerdict {
  VertexPair pair;
  bool pairwise = false;
  bool positive_pairwise = false;
  bool conditional = true;
};

struct AnalysisReport {
  ArraySpec spec;
  Tolerances tolerances;
  Spectrum spectrum;
  std::vector<EigGraphVerdict> rows;  // ordered by kappa, then V, W, Q
  IndexRecursionTrace index_trace;
  bool controllable = false;
  bool positively_controllable = false;
  std::vector<PairVerdict> pairs;
  Assumption1 assumption1;
  bool assumption2_verified = false;
  bool marginal = false;
  std::vector<std::string> caveats;
  std::vector<std::string> notes;
};

/// [B  A B  ...  A^{n-1} B] of the stacked array, as a generalized graph of blocksize n.
GenGraph controllability_matrix(const ArraySpec& spec, const BigOperators& big);

/// inc(V_k^* B) for every distinct eigenvalue.
std::vector<GenGraph> v_graphs(const ArraySpec& spec, const Spectrum& spectrum);

/// inc(W^[k]) with W_{i,sigma}^[k] = [B^[k]  A_k B^[k]  ...], columns sigma-major then power.
std::vector<GenGraph> w_graphs(const ArraySpec& spec, const Spectrum& spectrum);

/// Q-graphs built from powers of Lambda_k on the surviving inputs, with the index recursion.
QGraphs q_graphs_and_index_sets(const ArraySpec& spec, const Spectrum& spectrum,
                                const Tolerances& tol = {});

Assumption1 check_assumption_eigen(const Spectrum& spectrum, const Tolerances& tol = {});

/// True when A is a single chain of integrators up to a state permutation and every input
/// drives the chain's input state through a unit incidence pattern.
bool check_assumption_closed_structural(const ArraySpec& spec, double tol_zero = Tolerances{}.zero);

/// Caches the stacked operators, the spectrum and the eigenvalue graphs of one array.
/// Throws Error(domain) when the array fails validation.
class ArrayAnalyzer {
 public:
  explicit ArrayAnalyzer(ArraySpec spec, Tolerances tol = {});

  const ArraySpec& spec() const { return spec_; }
  const Tolerances& tolerances() const { return tol_; }
  const BigOperators& big() const { return big_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const GenGraph& controllability_graph() const { return w_; }
  const std::vector<GenGraph>& v_graphs() const { return v_graphs_; }
  const std::vector<GenGraph>& w_graphs() const { return w_graphs_; }
  const QGraphs& q_graphs() const;

  /// Throws Error(internal_consistency) when the eigenvalue graphs and the stacked
  /// controllability matrix disagree.
  Decision controllability() const;
  Decision positive_controllability() const;
  Decision pairwise(VertexPair pair) const;
  PositivePairwiseDecision positive_pairwise(VertexPair pair) const;

  Assumption1 assumption_eigen() const;
  bool assumption_closed() const;

  AnalysisReport report(const std::vector<VertexPair>& pairs) const;

 private:
  void check_pair(VertexPair pair) const;

  ArraySpec spec_;
  Tolerances tol_;
  BigOperators big_;
  Spectrum spectrum_;
  GenGraph w_;
  std::vector<GenGraph> v_graphs_;
  std::vector<GenGraph> w_graphs_;
  mutable std::optional<QGraphs> q_graphs_;
};

bool is_controllable(const ArraySpec& spec, const Tolerances& tol = {});
bool is_positively_controllable(const ArraySpec& spec, const Tolerances& tol = {});
bool is_pairwise_controllable(const ArraySpec& spec, VertexPair pair, const Tolerances& tol = {});
PositivePairwiseDecision is_positive_pairwise_controllable(const ArraySpec& spec, VertexPair pair,
                                                           const Tolerances& tol = {});

}  // namespace arrayctl
