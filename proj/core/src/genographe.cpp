#include "arrayctl/genographe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "arrayctl/array_model.hpp"
#include "arrayctl/errors.hpp"
#include "arrayctl/nnls.hpp"

namespace arrayctl {

namespace {

Index rank_above(const CMatrix& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return static_cast<Index>((svd.singularValues().array() > threshold).count());
}

double largest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

void require_real(const GenGraph& g, const char* what) {
  if (!g.is_real()) {
    throw Error(ErrorKind::domain, std::string(what) + " is defined only for real graphs");
  }
}

void require_pair(const GenGraph& g, VertexPair pair) {
  if (pair.k < 1 || pair.l < 1 || pair.k > g.q() || pair.l > g.q() || pair.k == pair.l) {
    throw Error(ErrorKind::domain, "vertex pair (" + std::to_string(pair.k) + "," +
                                       std::to_string(pair.l) + ") out of range for q = " +
                                       std::to_string(g.q()));
  }
}

Verdict cone_contains_subspace(const GenGraph& g, const Matrix& basis, double tol_cone) {
  Verdict out{true, false};
  for (Index j = 0; j < basis.cols() && out.value; ++j) {
    for (const double sign : {1.0, -1.0}) {
      const auto f = cone_member(g, sign * basis.col(j), tol_cone);
      out.marginal = out.marginal || f.marginal;
      if (!f.member) {
        out.value = false;
        break;
      }
    }
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_weight(const CVector& w, bool real) {
  auto scalar = [real](Complex z) {
    if (real || z.imag() == 0.0) return format_number(z.real());
    std::string s = format_number(z.real());
    const std::string im = format_number(std::abs(z.imag()));
    s += (z.imag() < 0.0 ? "-" : "+") + im + "j";
    return s;
  };
  if (w.size() == 1) return scalar(w(0));
  std::string s = "(";
  for (Index i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += scalar(w(i));
  }
  return s + ")";
}

}  // namespace

GenGraph::GenGraph(int q, int blocksize, CMatrix m, double tol_zero)
    : q_(q), blocksize_(blocksize), m_(std::move(m)) {
  if (q_ < 2 || blocksize_ < 1) throw Error(ErrorKind::dimension, "graph needs q >= 2, n >= 1");
  if (m_.rows() != static_cast<Index>(q_) * blocksize_) {
    throw Error(ErrorKind::dimension, "graph matrix has " + std::to_string(m_.rows()) +
                                          " rows, expected q * n = " +
                                          std::to_string(q_ * blocksize_));
  }
  for (Index c = 0; c < m_.cols(); ++c) {
    CVector sum = CVector::Zero(blocksize_);
    for (int i = 0; i < q_; ++i) sum += m_.col(c).segment(static_cast<Index>(i) * blocksize_, blocksize_);
    if (sum.norm() > tol_zero * q_ * std::max(1.0, m_.col(c).norm())) {
      throw Error(ErrorKind::domain, "column " + std::to_string(c + 1) +
                                         " is not orthogonal to the synchronization subspace");
    }
  }
  real_ = arrayctl::is_real(m_, 0.0);
}

GenGraph GenGraph::from_real(int q, int blocksize, const Matrix& m, double tol_zero) {
  return GenGraph(q, blocksize, m.cast<Complex>(), tol_zero);
}

bool range_contains(const GenGraph& g, const CMatrix& t, double tol_rank) {
  if (t.rows() != g.matrix().rows()) {
    throw Error(ErrorKind::dimension, "range test target has the wrong number of rows");
  }
  CMatrix joined(t.rows(), g.edges() + t.cols());
  joined << g.matrix(), t;
  const double threshold = tol_rank * std::max(1.0, largest_singular_value(joined));
  return rank_above(joined, threshold) == rank_above(g.matrix(), threshold);
}

Feasibility cone_member(const GenGraph& g, const Vector& v, double tol_cone) {
  require_real(g, "cone membership");
  if (v.size() != g.matrix().rows()) {
    throw Error(ErrorKind::dimension, "cone target has the wrong length");
  }
  const auto sol = nnls(g.real_matrix(), v);
  Feasibility f;
  f.residual = sol.residual;
  const double bound = tol_cone * (1.0 + v.norm());
  f.member = sol.residual <= bound;
  f.marginal = !f.member && sol.residual <= 10.0 * bound;
  if (f.member) f.certificate = sol.x;
  return f;
}

Matrix disagreement_frame(int q, int n) {
  return kron(disagreement_basis(q), Matrix::Identity(n, n));
}

bool is_connected(const GenGraph& g, const Tolerances& tol) {
  return range_contains(g, disagreement_frame(g.q(), g.blocksize()).cast<Complex>(), tol.rank);
}

bool is_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol) {
  require_pair(g, pair);
  return range_contains(g, pair_frame(g.q(), g.blocksize(), pair).cast<Complex>(), tol.rank);
}

Verdict strongly_connected(const GenGraph& g, const Tolerances& tol) {
  require_real(g, "strong connectivity");
  return cone_contains_subspace(g, disagreement_frame(g.q(), g.blocksize()), tol.cone);
}

Verdict strongly_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol) {
  require_real(g, "strong (k,l)-connectivity");
  require_pair(g, pair);
  return cone_contains_subspace(g, pair_frame(g.q(), g.blocksize(), pair) / std::sqrt(2.0),
                                tol.cone);
}

bool is_strongly_connected(const GenGraph& g, const Tolerances& tol) {
  return strongly_connected(g, tol).value;
}

bool is_strongly_kl_connected(const GenGraph& g, VertexPair pair, const Tolerances& tol) {
  return strongly_kl_connected(g, pair, tol).value;
}

SubspaceBasis lineality_space(const GenGraph& g, const Tolerances& tol) {
  require_real(g, "lineality space");
  const Matrix m = g.real_matrix();
  std::vector<Index> two_sided;
  for (Index c = 0; c < m.cols(); ++c) {
    if (m.col(c).norm() == 0.0) continue;
    if (cone_member(g, -m.col(c), tol.cone).member) two_sided.push_back(c);
  }
  Matrix gens(m.rows(), static_cast<Index>(two_sided.size()));
  for (size_t i = 0; i < two_sided.size(); ++i) gens.col(static_cast<Index>(i)) = m.col(two_sided[i]);
  return SubspaceBasis{orthonormal_range(gens, tol.rank)};
}

std::optional<std::vector<ScalarEdge>> detect_scalar_edges(const GenGraph& g, double tol_zero) {
  const int n = g.blocksize();
  std::vector<ScalarEdge> edges;
  for (Index c = 0; c < g.edges(); ++c) {
    const CVector col = g.matrix().col(c);
    const double floor = tol_zero * std::max(1.0, col.norm());
    std::vector<int> support;
    for (int i = 0; i < g.q(); ++i) {
      if (col.segment(static_cast<Index>(i) * n, n).norm() > floor) support.push_back(i);
    }
    if (support.empty()) continue;
    if (support.size() != 2) return std::nullopt;
    const CVector wi = col.segment(static_cast<Index>(support[0]) * n, n);
    const CVector wj = col.segment(static_cast<Index>(support[1]) * n, n);
    if ((wi + wj).norm() > floor) return std::nullopt;

    ScalarEdge e;
    e.column = static_cast<int>(c) + 1;
    e.tail = support[0] + 1;
    e.head = support[1] + 1;
    e.weight = wi;
    if (g.is_real()) {
      Index lead = 0;
      while (lead < n && std::abs(wi(lead)) <= floor) ++lead;
      if (lead < n && wi(lead).real() < 0.0) {
        std::swap(e.tail, e.head);
        e.weight = wj;
      }
    }
    edges.push_back(std::move(e));
  }
  return edges;
}

std::string to_dot(const GenGraph& g, const DotOptions& options) {
  const auto edges = detect_scalar_edges(g);
  if (!edges) {
    throw Error(ErrorKind::unsupported_render,
                "graph has a column that is not a scalar edge (hyperedge or mixed blocks)");
  }
  auto label = [&](int v) {
    return static_cast<size_t>(v - 1) < options.labels.size() ? options.labels[v - 1]
                                                              : std::to_string(v);
  };
  std::ostringstream os;
  os << "digraph \"" << options.name << "\" {\n";
  os << "  node [shape=circle];\n";
  if (!g.is_real()) os << "  edge [dir=none];\n";
  for (int v = 1; v <= g.q(); ++v) os << "  " << v << " [label=\"" << label(v) << "\"];\n";
  for (const auto& e : *edges) {
    os << "  " << e.tail << " -> " << e.head << " [label=\"" << format_weight(e.weight, g.is_real())
       << "\"];  // column " << e.column << "\n";
  }
  os << "}\n";
  return os.str();
}

double effective_conductance(const GenGraph& g, VertexPair pair, double tol_rank) {
  require_real(g, "effective conductance");
  require_pair(g, pair);
  if (g.blocksize() != 1) throw Error(ErrorKind::domain, "effective conductance needs blocksize 1");
  const Matrix m = g.real_matrix();
  const Matrix lap = m * m.transpose();
  Vector x = Vector::Zero(g.q());
  x(pair.k - 1) = 1.0;
  x(pair.l - 1) = -1.0;

  const GenGraph laplacian = GenGraph::from_real(g.q(), 1, lap);
  if (!range_contains(laplacian, x.cast<Complex>(), tol_rank)) return 0.0;

  Eigen::JacobiSVD<Matrix> svd(lap, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double top = svd.singularValues()(0);
  svd.setThreshold(tol_rank * std::max(1.0, top) / top);
  const double energy = x.dot(svd.solve(x));
  if (energy <= 0.0) return 0.0;
  return 1.0 / energy;
}

}  // namespace arrayctl
