#include "arrayctl/controllability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "arrayctl/errors.hpp"

namespace arrayctl {

namespace {

GenGraph make_graph(int q, int blocksize, const CMatrix& m, bool real, double tol_zero) {
  if (real) return GenGraph::from_real(q, blocksize, m.real(), tol_zero);
  return GenGraph(q, blocksize, m, tol_zero);
}

CMatrix project_inputs(const ArraySpec& spec, const CMatrix& basis) {
  const CMatrix left = kron(CMatrix::Identity(spec.q, spec.q), CMatrix(basis.adjoint()));
  return left * spec.B.cast<Complex>();
}

/// Columns [x, P x, P^2 x, ...] for each selected input, input-major.
CMatrix power_columns(int q, const CMatrix& projected, const CMatrix& step,
                      const std::vector<int>& inputs) {
  const Index nk = step.rows();
  const CMatrix big_step = kron(CMatrix::Identity(q, q), step);
  CMatrix out(projected.rows(), static_cast<Index>(inputs.size()) * nk);
  Index c = 0;
  for (const int sigma : inputs) {
    CVector col = projected.col(sigma);
    for (Index r = 0; r < nk; ++r) {
      out.col(c++) = col;
      col = big_step * col;
    }
  }
  return out;
}

std::vector<int> all_inputs(int p) {
  std::vector<int> out(static_cast<size_t>(p));
  for (int s = 0; s < p; ++s) out[static_cast<size_t>(s)] = s;
  return out;
}

std::vector<int> one_based(const std::vector<int>& zero_based) {
  std::vector<int> out;
  out.reserve(zero_based.size());
  for (const int s : zero_based) out.push_back(s + 1);
  return out;
}

/// Index of the component whose data is the conjugate of component i, or -1.
int conjugate_partner(const Spectrum& spectrum, int i) {
  const auto& c = spectrum.components[static_cast<size_t>(i)];
  if (c.is_real || c.mu.imag() >= 0.0 || i == 0) return -1;
  return i - 1;
}

EigGraphVerdict copy_for(const EigGraphVerdict& from, const EigComponent& comp, int kappa) {
  EigGraphVerdict out = from;
  out.kappa = kappa;
  out.mu = comp.mu;
  return out;
}

std::string pair_text(VertexPair pair) {
  return "(" + std::to_string(pair.k) + "," + std::to_string(pair.l) + ")";
}

std::string mu_text(Complex mu) {
  std::ostringstream os;
  os.precision(6);
  os << mu.real();
  if (mu.imag() != 0.0) os << (mu.imag() < 0 ? "-" : "+") << std::abs(mu.imag()) << "j";
  return os.str();
}

void merge_pair(EigGraphVerdict& row, const PairFlags& flags) {
  for (auto& existing : row.pairs) {
    if (existing.pair == flags.pair) {
      if (flags.kl_connected) existing.kl_connected = flags.kl_connected;
      if (flags.strongly_kl_connected) existing.strongly_kl_connected = flags.strongly_kl_connected;
      return;
    }
  }
  row.pairs.push_back(flags);
}

}  // namespace

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::v_graph: return "V";
    case GraphKind::w_graph: return "W";
    case GraphKind::q_graph: return "Q";
  }
  return "?";
}

const PairFlags* EigGraphVerdict::find(VertexPair pair) const {
  for (const auto& f : pairs) {
    if (f.pair == pair) return &f;
  }
  return nullptr;
}

GenGraph controllability_matrix(const ArraySpec& spec, const BigOperators& big) {
  const Index rows = big.Bbig.rows();
  const Index p = big.Bbig.cols();
  Matrix w(rows, p * spec.n);
  Matrix term = big.Bbig;
  for (int k = 0; k < spec.n; ++k) {
    w.middleCols(k * p, p) = term;
    term = big.Abig * term;
  }
  return GenGraph::from_real(spec.q, spec.n, w, Tolerances{}.zero);
}

std::vector<GenGraph> v_graphs(const ArraySpec& spec, const Spectrum& spectrum) {
  std::vector<GenGraph> out;
  out.reserve(spectrum.components.size());
  for (const auto& comp : spectrum.components) {
    out.push_back(make_graph(spec.q, comp.geo_mult, project_inputs(spec, comp.V), comp.is_real,
                             Tolerances{}.zero));
  }
  return out;
}

std::vector<GenGraph> w_graphs(const ArraySpec& spec, const Spectrum& spectrum) {
  std::vector<GenGraph> out;
  out.reserve(spectrum.components.size());
  for (const auto& comp : spectrum.components) {
    const CMatrix cols =
        power_columns(spec.q, project_inputs(spec, comp.U), comp.A_k, all_inputs(spec.p));
    out.push_back(make_graph(spec.q, comp.alg_mult, cols, comp.is_real, Tolerances{}.zero));
  }
  return out;
}

QGraphs q_graphs_and_index_sets(const ArraySpec& spec, const Spectrum& spectrum,
                                const Tolerances& tol) {
  QGraphs out;
  std::vector<int> current = all_inputs(spec.p);
  for (int i = 0; i < spectrum.size(); ++i) {
    const auto& comp = spectrum.components[static_cast<size_t>(i)];
    const CMatrix cols =
        power_columns(spec.q, project_inputs(spec, comp.U), comp.Lambda, current);
    GenGraph graph = make_graph(spec.q, comp.alg_mult, cols, comp.is_real, tol.zero);

    IndexStep step;
    step.kappa = i + 1;
    step.I = one_based(current);
    std::vector<int> next = current;
    if (comp.is_real) {
      const SubspaceBasis lineality = lineality_space(graph, tol);
      step.Q_dim = static_cast<int>(lineality.dimension());
      const Matrix m = graph.real_matrix();
      const Index nk = comp.alg_mult;
      std::vector<int> leaving;
      for (size_t s = 0; s < current.size(); ++s) {
        bool outside = false;
        for (Index r = 0; r < nk && !outside; ++r) {
          const Vector c = m.col(static_cast<Index>(s) * nk + r);
          const Vector residual = c - lineality.columns * (lineality.columns.transpose() * c);
          outside = residual.norm() > tol.cone * (1.0 + c.norm());
        }
        if (outside) leaving.push_back(current[s]);
      }
      step.I_minus = one_based(leaving);
      next.clear();
      std::set_difference(current.begin(), current.end(), leaving.begin(), leaving.end(),
                          std::back_inserter(next));
    }
    out.graphs.push_back(std::move(graph));
    out.trace.push_back(std::move(step));
    current = std::move(next);
  }
  return out;
}

Assumption1 check_assumption_eigen(const Spectrum& spectrum, const Tolerances& tol) {
  Assumption1 out;
  for (int i = 0; i < spectrum.size(); ++i) {
    const auto& comp = spectrum.components[static_cast<size_t>(i)];
    if (comp.is_real) continue;
    const bool shares_real_part =
        std::any_of(spectrum.components.begin(), spectrum.components.end(), [&](const auto& c) {
          return c.is_real && std::abs(c.mu.real() - comp.mu.real()) <= spectrum.tol_abs;
        });
    if (!shares_real_part) continue;
    const double norm = comp.Lambda.size() == 0 ? 0.0 : comp.Lambda.norm();
    if (norm > tol.residual) {
      out.holds = false;
      out.violated_at = i + 1;
      return out;
    }
  }
  return out;
}

bool check_assumption_closed_structural(const ArraySpec& spec, double tol_zero) {
  const int n = spec.n;
  auto snap = [tol_zero](double x, double& value) {
    const double r = std::round(x);
    if (std::abs(x - r) > tol_zero) return false;
    value = r;
    return true;
  };

  // A: zero/one entries forming one path through all states.
  Eigen::MatrixXi a(n, n);
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (!snap(spec.A(i, j), v) || (v != 0.0 && v != 1.0)) return false;
      a(i, j) = static_cast<int>(v);
      ones += a(i, j);
    }
  }
  if (ones != n - 1) return false;
  int input_state = -1;
  for (int i = 0; i < n; ++i) {
    if (a.row(i).sum() == 0) {
      if (input_state >= 0) return false;
      input_state = i;
    }
  }
  if (input_state < 0) return false;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  seen[static_cast<size_t>(input_state)] = true;
  int cur = input_state;
  for (int step = 1; step < n; ++step) {
    if (a.col(cur).sum() != 1) return false;
    int prev = 0;
    a.col(cur).maxCoeff(&prev);
    if (seen[static_cast<size_t>(prev)]) return false;
    seen[static_cast<size_t>(prev)] = true;
    cur = prev;
  }

  // B: every input is e_i - e_j on the chain's input state.
  for (int s = 0; s < spec.p; ++s) {
    int plus = 0;
    int minus = 0;
    for (int i = 0; i < spec.q; ++i) {
      const Vector b = spec.block(i, s);
      for (int r = 0; r < n; ++r) {
        double v = 0.0;
        if (!snap(b(r), v)) return false;
        if (r != input_state) {
          if (v != 0.0) return false;
        } else if (v == 1.0) {
          ++plus;
        } else if (v == -1.0) {
          ++minus;
        } else if (v != 0.0) {
          return false;
        }
      }
    }
    if (plus != 1 || minus != 1) return false;
  }
  return true;
}

ArrayAnalyzer::ArrayAnalyzer(ArraySpec spec, Tolerances tol)
    : spec_(std::move(spec)),
      tol_(tol),
      big_(build_big(spec_, tol_.zero)),
      spectrum_(compute_spectrum(spec_.A, tol_)),
      w_(controllability_matrix(spec_, big_)),
      v_graphs_(arrayctl::v_graphs(spec_, spectrum_)),
      w_graphs_(arrayctl::w_graphs(spec_, spectrum_)) {}

const QGraphs& ArrayAnalyzer::q_graphs() const {
  if (!q_graphs_) q_graphs_ = q_graphs_and_index_sets(spec_, spectrum_, tol_);
  return *q_graphs_;
}

void ArrayAnalyzer::check_pair(VertexPair pair) const {
  if (pair.k < 1 || pair.l < 1 || pair.k > spec_.q || pair.l > spec_.q || pair.k == pair.l) {
    throw Error(ErrorKind::domain,
                "vertex pair " + pair_text(pair) + " needs 1 <= k != l <= q = " +
                    std::to_string(spec_.q));
  }
}

Decision ArrayAnalyzer::controllability() const {
  Decision out;
  out.value = true;
  for (int i = 0; i < spectrum_.size(); ++i) {
    const auto& comp = spectrum_.components[static_cast<size_t>(i)];
    const int partner = conjugate_partner(spectrum_, i);
    if (partner >= 0) {
      out.per_kappa.push_back(copy_for(out.per_kappa[static_cast<size_t>(partner)], comp, i + 1));
      continue;
    }
    EigGraphVerdict row;
    row.kappa = i + 1;
    row.mu = comp.mu;
    row.kind = GraphKind::v_graph;
    row.connected = is_connected(v_graphs_[static_cast<size_t>(i)], tol_);
    out.value = out.value && *row.connected;
    out.per_kappa.push_back(std::move(row));
  }
  const bool direct = is_connected(w_, tol_);
  if (direct != out.value) {
    throw Error(ErrorKind::internal_consistency,
                std::string("eigenvalue graphs say ") + (out.value ? "connected" : "not connected") +
                    " but the controllability matrix says " +
                    (direct ? "connected" : "not connected") + "; tolerances are too loose or tight");
  }
  return out;
}

Decision ArrayAnalyzer::positive_controllability() const {
  Decision out = controllability();
  bool strong = true;
  for (int i = 0; i < spectrum_.size(); ++i) {
    const auto& comp = spectrum_.components[static_cast<size_t>(i)];
    if (!comp.is_real) continue;
    const Verdict v = strongly_connected(v_graphs_[static_cast<size_t>(i)], tol_);
    auto& row = out.per_kappa[static_cast<size_t>(i)];
    row.strongly_connected = v.value;
    row.marginal = v.marginal;
    out.marginal = out.marginal || v.marginal;
    strong = strong && v.value;
  }
  out.value = out.value && strong;
  return out;
}

Decision ArrayAnalyzer::pairwise(VertexPair pair) const {
  check_pair(pair);
  Decision out;
  out.value = true;
  for (int i = 0; i < spectrum_.size(); ++i) {
    const auto& comp = spectrum_.components[static_cast<size_t>(i)];
    const int partner = conjugate_partner(spectrum_, i);
    if (partner >= 0) {
      out.per_kappa.push_back(copy_for(out.per_kappa[static_cast<size_t>(partner)], comp, i + 1));
      continue;
    }
    EigGraphVerdict row;
    row.kappa = i + 1;
    row.mu = comp.mu;
    row.kind = GraphKind::w_graph;
    const bool kl = is_kl_connected(w_graphs_[static_cast<size_t>(i)], pair, tol_);
    row.pairs.push_back({pair, kl, std::nullopt});
    out.value = out.value && kl;
    out.per_kappa.push_back(std::move(row));
  }
  const bool direct = is_kl_connected(w_, pair, tol_);
  if (direct != out.value) {
    throw Error(ErrorKind::internal_consistency,
                "eigenvalue graphs and the controllability matrix disagree on pair " +
                    pair_text(pair));
  }
  return out;
}

PositivePairwiseDecision ArrayAnalyzer::positive_pairwise(VertexPair pair) const {
  check_pair(pair);
  const QGraphs& qg = q_graphs();
  PositivePairwiseDecision out;
  out.value = true;
  for (int i = 0; i < spectrum_.size(); ++i) {
    const auto& comp = spectrum_.components[static_cast<size_t>(i)];
    const int partner = conjugate_partner(spectrum_, i);
    if (partner >= 0) {
      out.per_kappa.push_back(copy_for(out.per_kappa[static_cast<size_t>(partner)], comp, i + 1));
      continue;
    }
    EigGraphVerdict row;
    row.kappa = i + 1;
    row.mu = comp.mu;
    row.kind = GraphKind::q_graph;
    const GenGraph& g = qg.graphs[static_cast<size_t>(i)];
    bool ok = false;
    if (comp.is_real) {
      const Verdict v = strongly_kl_connected(g, pair, tol_);
      ok = v.value;
      row.marginal = v.marginal;
      out.marginal = out.marginal || v.marginal;
      row.pairs.push_back({pair, std::nullopt, ok});
    } else {
      ok = is_kl_connected(g, pair, tol_);
      row.pairs.push_back({pair, ok, std::nullopt});
    }
    out.value = out.value && ok;
    out.per_kappa.push_back(std::move(row));
  }
  out.conditional = !(assumption_eigen().holds && assumption_closed());
  return out;
}

Assumption1 ArrayAnalyzer::assumption_eigen() const { return check_assumption_eigen(spectrum_, tol_); }

bool ArrayAnalyzer::assumption_closed() const {
  return check_assumption_closed_structural(spec_, tol_.zero);
}

AnalysisReport ArrayAnalyzer::report(const std::vector<VertexPair>& pairs) const {
  for (const auto& pair : pairs) check_pair(pair);

  AnalysisReport r;
  r.spec = spec_;
  r.tolerances = tol_;
  r.spectrum = spectrum_;
  r.assumption1 = assumption_eigen();
  r.assumption2_verified = assumption_closed();

  const Decision positive = positive_controllability();
  r.controllable = std::all_of(positive.per_kappa.begin(), positive.per_kappa.end(),
                               [](const auto& row) { return row.connected.value_or(false); });
  r.positively_controllable = positive.value;
  r.marginal = positive.marginal;

  const size_t m = spectrum_.components.size();
  std::vector<EigGraphVerdict> v_rows = positive.per_kappa;
  std::vector<EigGraphVerdict> w_rows(m);
  std::vector<EigGraphVerdict> q_rows(m);
  for (const auto& pair : pairs) {
    const Decision pw = pairwise(pair);
    const PositivePairwiseDecision ppw = positive_pairwise(pair);
    r.pairs.push_back({pair, pw.value, ppw.value, ppw.conditional});
    r.marginal = r.marginal || ppw.marginal;
    for (size_t i = 0; i < m; ++i) {
      const bool v_kl = is_kl_connected(v_graphs_[i], pair, tol_);
      merge_pair(v_rows[i], {pair, v_kl, std::nullopt});
      if (w_rows[i].pairs.empty()) {
        w_rows[i] = pw.per_kappa[i];
        q_rows[i] = ppw.per_kappa[i];
      } else {
        merge_pair(w_rows[i], pw.per_kappa[i].pairs.front());
        merge_pair(q_rows[i], ppw.per_kappa[i].pairs.front());
        q_rows[i].marginal = q_rows[i].marginal || ppw.per_kappa[i].marginal;
      }
      const bool w_kl = pw.per_kappa[i].pairs.front().kl_connected.value_or(false);
      if (v_kl && !w_kl) {
        r.notes.push_back("the V-graph at kappa=" + std::to_string(i + 1) + " (mu=" +
                          mu_text(spectrum_.components[i].mu) + ") is " + pair_text(pair) +
                          "-connected, but the W-graph is not, so the array is not " +
                          pair_text(pair) + "-controllable");
      }
    }
  }

  for (size_t i = 0; i < m; ++i) {
    r.rows.push_back(v_rows[i]);
    if (!pairs.empty()) {
      r.rows.push_back(w_rows[i]);
      r.rows.push_back(q_rows[i]);
    }
  }
  if (!pairs.empty()) r.index_trace = q_graphs().trace;

  if (!pairs.empty()) {
    if (!r.assumption1.holds) {
      r.caveats.push_back("assumption 1 fails at kappa=" + std::to_string(*r.assumption1.violated_at) +
                          "; positive pairwise verdicts are conditional");
    }
    if (!r.assumption2_verified) {
      r.caveats.push_back(
          "closedness of the reachable cone is not structurally verified; positive pairwise "
          "verdicts are conditional");
    }
  }
  if (r.marginal) {
    r.caveats.push_back("at least one cone test landed within 10x of the cone tolerance");
  }
  return r;
}

bool is_controllable(const ArraySpec& spec, const Tolerances& tol) {
  return ArrayAnalyzer(spec, tol).controllability().value;
}

bool is_positively_controllable(const ArraySpec& spec, const Tolerances& tol) {
  return ArrayAnalyzer(spec, tol).positive_controllability().value;
}

bool is_pairwise_controllable(const ArraySpec& spec, VertexPair pair, const Tolerances& tol) {
  return ArrayAnalyzer(spec, tol).pairwise(pair).value;
}

PositivePairwiseDecision is_positive_pairwise_controllable(const ArraySpec& spec, VertexPair pair,
                                                           const Tolerances& tol) {
  return ArrayAnalyzer(spec, tol).positive_pairwise(pair);
}

}  // namespace arrayctl
