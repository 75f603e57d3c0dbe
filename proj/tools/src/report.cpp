#include "arrayctl_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrayctl/errors.hpp"

namespace arrayctl::cli {

using nlohmann::json;

namespace {

Complex rounded(Complex mu) {
  const double scale = std::abs(mu);
  if (scale == 0.0) return {0.0, 0.0};
  const double quantum = std::pow(10.0, std::floor(std::log10(scale)) - 8.0);
  auto snap = [quantum](double x) {
    const double r = std::round(x / quantum) * quantum;
    return r == 0.0 ? 0.0 : r;
  };
  return {snap(mu.real()), snap(mu.imag())};
}

std::string g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

json complex_json(Complex mu) {
  const Complex r = rounded(mu);
  return {{"re", r.real()}, {"im", r.imag()}};
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::string yes_no(bool b) { return b ? "YES" : "NO"; }

std::string flag(const std::optional<bool>& b, const char* yes, const char* no) {
  return b ? (*b ? yes : no) : "-";
}

std::string pair_text(VertexPair pair) {
  return "(" + std::to_string(pair.k) + "," + std::to_string(pair.l) + ")";
}

std::string index_set(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::vector<VertexPair> report_pairs(const AnalysisReport& report) {
  std::vector<VertexPair> out;
  for (const auto& p : report.pairs) out.push_back(p.pair);
  return out;
}

}  // namespace

std::string format_mu(Complex mu) {
  const Complex r = rounded(mu);
  if (r.imag() == 0.0) return g9(r.real());
  return g9(r.real()) + (r.imag() < 0.0 ? "-" : "+") + g9(std::abs(r.imag())) + "j";
}

json report_to_json(const AnalysisReport& report) {
  json doc;
  doc["report_version"] = kReportVersion;
  doc["spec"] = {{"name", report.spec.name},
                 {"n", report.spec.n},
                 {"q", report.spec.q},
                 {"p", report.spec.p}};
  doc["tolerances"] = {{"rank", report.tolerances.rank},
                       {"cone", report.tolerances.cone},
                       {"eig", report.tolerances.eig},
                       {"zero", report.tolerances.zero},
                       {"residual", report.tolerances.residual}};

  json spectrum = json::array();
  for (size_t i = 0; i < report.spectrum.components.size(); ++i) {
    const auto& c = report.spectrum.components[i];
    spectrum.push_back({{"kappa", static_cast<int>(i) + 1},
                        {"mu", complex_json(c.mu)},
                        {"alg_mult", c.alg_mult},
                        {"geo_mult", c.geo_mult},
                        {"is_real", c.is_real}});
  }
  doc["spectrum"] = spectrum;

  json rows = json::array();
  for (const auto& row : report.rows) {
    json pairs = json::array();
    for (const auto& f : row.pairs) {
      pairs.push_back({{"k", f.pair.k},
                       {"l", f.pair.l},
                       {"kl_connected", optional_bool(f.kl_connected)},
                       {"strongly_kl_connected", optional_bool(f.strongly_kl_connected)}});
    }
    rows.push_back({{"kappa", row.kappa},
                    {"mu", complex_json(row.mu)},
                    {"graph_kind", to_string(row.kind) + "-graph"},
                    {"connected", optional_bool(row.connected)},
                    {"strongly_connected", optional_bool(row.strongly_connected)},
                    {"pairs", pairs},
                    {"marginal", row.marginal}});
  }
  doc["eigen_graphs"] = rows;

  json trace = json::array();
  for (const auto& step : report.index_trace) {
    trace.push_back({{"kappa", step.kappa},
                     {"I", step.I},
                     {"I_minus", step.I_minus},
                     {"Q_dim", step.Q_dim ? json(*step.Q_dim) : json(nullptr)}});
  }
  doc["index_recursion"] = trace;

  json pairwise = json::array();
  json positive_pairwise = json::array();
  for (const auto& p : report.pairs) {
    pairwise.push_back({{"k", p.pair.k}, {"l", p.pair.l}, {"value", p.pairwise}});
    positive_pairwise.push_back(
        {{"k", p.pair.k}, {"l", p.pair.l}, {"value", p.positive_pairwise}, {"conditional", p.conditional}});
  }
  doc["verdicts"] = {{"controllable", report.controllable},
                     {"positively_controllable", report.positively_controllable},
                     {"pairwise", pairwise},
                     {"positive_pairwise", positive_pairwise}};
  doc["assumption1"] = {{"holds", report.assumption1.holds},
                        {"violated_at", report.assumption1.violated_at
                                            ? json(*report.assumption1.violated_at)
                                            : json(nullptr)}};
  doc["assumption2"] = report.assumption2_verified ? "structurally_verified" : "unverified";
  doc["marginal"] = report.marginal;
  doc["caveats"] = report.caveats;
  doc["notes"] = report.notes;
  return doc;
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream os;
  const auto& spec = report.spec;
  os << "array: " << spec.name << " (n=" << spec.n << ", q=" << spec.q << ", p=" << spec.p << ")\n";
  os << "tolerances: rank=" << report.tolerances.rank << " cone=" << report.tolerances.cone
     << " eig=" << report.tolerances.eig << " zero=" << report.tolerances.zero << "\n\n";

  os << "spectrum of A^T (" << report.spectrum.size() << " distinct):\n";
  os << "  " << pad("kappa", 7) << pad("mu", 28) << pad("alg", 5) << "geo\n";
  for (size_t i = 0; i < report.spectrum.components.size(); ++i) {
    const auto& c = report.spectrum.components[i];
    os << "  " << pad(std::to_string(i + 1), 7) << pad(format_mu(c.mu), 28)
       << pad(std::to_string(c.alg_mult), 5) << c.geo_mult << "\n";
  }

  const auto pairs = report_pairs(report);
  os << "\neigenvalue graphs:\n";
  os << "  " << pad("kappa", 7) << pad("mu", 28) << pad("graph", 7) << pad("connected", 15)
     << pad("strong", 12);
  for (const auto& p : pairs) os << pad(pair_text(p), 8) << pad("strong" + pair_text(p), 14);
  os << "\n";
  for (const auto& row : report.rows) {
    os << "  " << pad(std::to_string(row.kappa), 7) << pad(format_mu(row.mu), 28)
       << pad(to_string(row.kind), 7) << pad(flag(row.connected, "connected", "not connected"), 15)
       << pad(flag(row.strongly_connected, "strong", "not strong"), 12);
    for (const auto& p : pairs) {
      const PairFlags* f = row.find(p);
      os << pad(f ? flag(f->kl_connected, "yes", "no") : "-", 8)
         << pad(f ? flag(f->strongly_kl_connected, "yes", "no") : "-", 14);
    }
    if (row.marginal) os << "marginal";
    os << "\n";
  }

  if (!report.index_trace.empty()) {
    os << "\nindex recursion:\n";
    for (const auto& step : report.index_trace) {
      os << "  kappa " << step.kappa << ": I=" << index_set(step.I)
         << " I-=" << index_set(step.I_minus);
      if (step.Q_dim) os << " dim Q=" << *step.Q_dim;
      os << "\n";
    }
  }

  os << "\nverdicts:\n";
  os << "  controllable: " << yes_no(report.controllable) << "\n";
  os << "  positively controllable: " << yes_no(report.positively_controllable) << "\n";
  for (const auto& p : report.pairs) {
    os << "  " << pair_text(p.pair) << ": " << yes_no(p.pairwise) << "\n";
    os << "  positive " << pair_text(p.pair) << ": " << yes_no(p.positive_pairwise)
       << (p.conditional ? " (conditional)" : "") << "\n";
  }
  os << "\nassumption 1: "
     << (report.assumption1.holds ? std::string("holds")
                                  : "violated at kappa=" + std::to_string(*report.assumption1.violated_at))
     << "\n";
  os << "assumption 2: " << (report.assumption2_verified ? "structurally verified" : "unverified")
     << "\n";
  for (const auto& note : report.notes) os << "note: " << note << "\n";
  for (const auto& caveat : report.caveats) os << "caveat: " << caveat << "\n";
  return os.str();
}

json oracles_to_json(const std::vector<OracleVerdict>& verdicts) {
  json list = json::array();
  bool all = true;
  for (const auto& v : verdicts) {
    json witness = nullptr;
    if (v.witness) {
      witness = json::array();
      for (Index i = 0; i < v.witness->size(); ++i) witness.push_back((*v.witness)(i));
    }
    list.push_back({{"name", v.name},
                    {"pair", v.pair ? json{{"k", v.pair->k}, {"l", v.pair->l}} : json(nullptr)},
                    {"agrees", optional_bool(v.agrees)},
                    {"detail", v.detail},
                    {"witness", witness}});
    all = all && v.agrees.value_or(true);
  }
  return {{"report_version", kReportVersion}, {"oracles", list}, {"all_agree", all}};
}

std::string oracles_to_text(const std::vector<OracleVerdict>& verdicts) {
  std::ostringstream os;
  os << pad("oracle", 18) << pad("pair", 7) << pad("agrees", 8) << "detail\n";
  for (const auto& v : verdicts) {
    os << pad(v.name, 18) << pad(v.pair ? pair_text(*v.pair) : "-", 7)
       << pad(v.agrees ? (*v.agrees ? "yes" : "NO") : "-", 8) << v.detail << "\n";
  }
  return os.str();
}

std::vector<std::string> write_dot_files(const ArrayAnalyzer& analyzer, const AnalysisReport& report,
                                         const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::string> written;
  auto emit = [&](const GenGraph& g, const std::string& kind, int kappa) {
    const std::string stem = report.spec.name + "_" + kind + "_k" + std::to_string(kappa);
    std::string text;
    try {
      text = to_dot(g, DotOptions{stem, {}});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::unsupported_render) return;
      throw;
    }
    const fs::path path = fs::path(directory) / (stem + ".dot");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    written.push_back(path.string());
  };
  const int m = analyzer.spectrum().size();
  for (int i = 0; i < m; ++i) {
    emit(analyzer.v_graphs()[static_cast<size_t>(i)], "V", i + 1);
    emit(analyzer.w_graphs()[static_cast<size_t>(i)], "W", i + 1);
    if (!report.pairs.empty()) emit(analyzer.q_graphs().graphs[static_cast<size_t>(i)], "Q", i + 1);
  }
  return written;
}

}  // namespace arrayctl::cli
