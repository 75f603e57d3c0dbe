#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrayctl/linalg.hpp"

namespace arrayctl {

/// A class-G_n matrix read as a generalized graph on q vertices: every column is an edge and
/// lies in the disagreement subspace, i.e. (1_q^T (x) I_n) M = 0.
class GenGraph {
 public:
  /// Throws Error(domain) when a column has a synchronous component above tol_zero.
  GenGraph(int q, int blocksize, CMatrix m, double tol_zero = Tolerances{}.zero);

  static GenGraph from_real(int q, int blocksize, const Matrix& m,
                            double tol_zero = Tolerances{}.zero);

  int q() const { return q_; }
  int blocksize() const { return blocksize_; }
  Index edges() const { return m_.cols(); }
  bool is_real() const { return real_; }
  const CMatrix& matrix() const { return m_; }
  Matrix real_matrix() const { return m_.real(); }

 private:
  int q_;
  int blocksize_;
  CMatrix m_;
  bool real_;
};

struct Feasibility {
  bool member = false;
  Vector certificate;     // nonnegative weights, populated when member
  double residual = 0.0;  // least-squares distance of the target to the cone
  bool marginal = false;  // residual in (tol, 10 tol]: reported, still a non-member
};

/// A predicate outcome that may sit close to the cone-membership threshold.
struct Verdict {
  bool value = false;
  bool marginal = false;
};

struct SubspaceBasis {
  Matrix columns;  // orthonormal

  Index dimension() const { return columns.cols(); }
};

/// rank [M | T] == rank M under the relative rank tolerance.
bool range_contains(const GenGraph& g, const CMatrix& t, double tol_rank = Tolerances{}.rank);

/// Decides v in cone(M) with nonnegative least squares. Requires a real graph.
Feasibility cone_member(const GenGraph& g, const Vector& v, double tol_cone = Tolerances{}.cone);

/// (D (x) I_n): orthonormal basis of the disagreement subspace.
Matrix disagreement_frame(int q, int n);

bool is_connected(const GenGraph& g, const Tolerances& tol = {});
bool is_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol = {});

/// cone(M) contains the disagreement subspace; +b and -b are tested over a fixed orthonormal
/// basis. Throws Error(domain) for complex graphs.
Verdict strongly_connected(const GenGraph& g, const Tolerances& tol = {});
Verdict strongly_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol = {});

bool is_strongly_connected(const GenGraph& g, const Tolerances& tol = {});
bool is_strongly_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol = {});

/// Largest subspace contained in cone(M): the span of the columns whose negation is itself
/// a nonnegative combination of the columns.
SubspaceBasis lineality_space(const GenGraph& g, const Tolerances& tol = {});

struct ScalarEdge {
  int column = 0;  // 1-based
  int tail = 0;    // 1-based vertex carrying +w
  int head = 0;    // 1-based vertex carrying -w
  CVector weight;
};

/// Succeeds when every column is (e_i - e_j) (x) w. Zero columns carry no edge and are
/// omitted from the list; real graphs are oriented so the leading weight entry is positive.
std::optional<std::vector<ScalarEdge>> detect_scalar_edges(const GenGraph& g,
                                                           double tol_zero = Tolerances{}.zero);

struct DotOptions {
  std::string name = "G";
  std::vector<std::string> labels;  // vertex labels; defaults to 1..q
};

/// Graphviz digraph text, one arc per nonzero column. Throws Error(unsupported_render) for
/// graphs with hyperedges or non-scalar columns.
std::string to_dot(const GenGraph& g, const DotOptions& options = {});

/// Effective conductance between vertices k and l of the resistive network with
/// admittance matrix M M^T. Zero when (e_k - e_l) is outside range(M M^T).
double effective_conductance(const GenGraph& g, VertexPair pair, double tol_rank = Tolerances{}.rank);

}  // namespace arrayctl
