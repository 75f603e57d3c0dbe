#include "arrayctl_cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "arrayctl/errors.hpp"
#include "arrayctl_cli/corpus.hpp"
#include "arrayctl_cli/report.hpp"
#include "arrayctl_cli/spec_file.hpp"

namespace arrayctl::cli {

namespace {

struct ToleranceFlags {
  std::optional<double> rank;
  std::optional<double> cone;
  std::optional<double> eig;
  std::optional<double> zero;

  void attach(CLI::App& cmd) {
    cmd.add_option("--tol-rank", rank, "relative rank tolerance")->check(CLI::NonNegativeNumber);
    cmd.add_option("--tol-cone", cone, "cone membership tolerance")->check(CLI::NonNegativeNumber);
    cmd.add_option("--tol-eig", eig, "eigenvalue clustering tolerance")->check(CLI::NonNegativeNumber);
    cmd.add_option("--tol-zero", zero, "absolute zero tolerance")->check(CLI::NonNegativeNumber);
  }

  Tolerances apply(Tolerances t) const {
    if (rank) t.rank = *rank;
    if (cone) t.cone = *cone;
    if (eig) t.eig = *eig;
    if (zero) t.zero = *zero;
    return t;
  }
};

struct Loaded {
  ArraySpec spec;
  Tolerances tol;
};

/// Parses and validates; prints diagnostics and returns nothing on failure.
std::optional<Loaded> load(const std::string& path, const ToleranceFlags& flags, std::ostream& err) {
  SpecFile file;
  try {
    file = load_spec(path);
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return std::nullopt;
  } catch (const Error& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
  const Tolerances tol = flags.apply(file.tolerances);
  const ValidationReport validation = validate_array(file.spec, tol.zero);
  if (!validation.ok()) {
    err << "error: " << path << " is not a valid relative-actuation array:\n" << validation.describe();
    return std::nullopt;
  }
  return Loaded{std::move(file.spec), tol};
}

std::vector<VertexPair> to_pairs(const std::vector<std::pair<int, int>>& raw) {
  std::vector<VertexPair> out;
  for (const auto& [k, l] : raw) out.push_back({k, l});
  return out;
}

int library_failure(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return is_numerical(e.kind()) ? kNumericalError : kInputError;
}

int cmd_analyze(const std::string& path, const std::vector<std::pair<int, int>>& raw_pairs,
                bool as_json, const std::string& dot_dir, const ToleranceFlags& flags,
                std::ostream& out, std::ostream& err) {
  const auto loaded = load(path, flags, err);
  if (!loaded) return kInputError;
  try {
    const ArrayAnalyzer analyzer(loaded->spec, loaded->tol);
    const AnalysisReport report = analyzer.report(to_pairs(raw_pairs));
    if (as_json) {
      out << report_to_json(report).dump(2) << "\n";
    } else {
      out << report_to_text(report);
    }
    if (!dot_dir.empty()) {
      for (const auto& file : write_dot_files(analyzer, report, dot_dir)) {
        err << "wrote " << file << "\n";
      }
    }
  } catch (const Error& e) {
    return library_failure(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_examples(const std::string& name, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  const auto spec = example(name);
  if (!spec) {
    err << "error: unknown example \"" << name << "\"; available:";
    for (const auto& n : example_names()) err << " " << n;
    err << "\n";
    return kInputError;
  }
  const std::string text = spec_to_json(*spec).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(out_path);
  if (!file) {
    err << "error: cannot write " << out_path << "\n";
    return kInputError;
  }
  file << text;
  return kOk;
}

int cmd_oracle(const std::string& path, const std::vector<std::pair<int, int>>& raw_pairs,
               const OracleOptions& options, bool as_json, const ToleranceFlags& flags,
               std::ostream& out, std::ostream& err) {
  const auto loaded = load(path, flags, err);
  if (!loaded) return kInputError;
  try {
    const ArrayAnalyzer analyzer(loaded->spec, loaded->tol);
    const AnalysisReport report = analyzer.report(to_pairs(raw_pairs));
    const auto verdicts = run_oracles(report, options);
    if (as_json) {
      out << oracles_to_json(verdicts).dump(2) << "\n";
    } else {
      out << oracles_to_text(verdicts);
    }
    for (const auto& v : verdicts) {
      if (v.agrees && !*v.agrees) return kDisagreement;
    }
  } catch (const Error& e) {
    return library_failure(e, err);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controllability of arrays of identical LTI systems under relative actuation.\n"
               "Vertex indices are 1-based."};
  app.name("arrayctl");
  app.require_subcommand(1);

  std::string path;
  std::vector<std::pair<int, int>> pairs;
  bool as_json = false;
  std::string dot_dir;
  ToleranceFlags analyze_tol;
  auto* analyze = app.add_subcommand("analyze", "run the four controllability analyses");
  analyze->add_option("spec", path, "spec file (JSON)")->required();
  analyze->add_option("--pair", pairs, "vertex pair K L for pairwise analyses (repeatable)");
  analyze->add_flag("--json", as_json, "print the JSON report");
  analyze->add_option("--dot", dot_dir, "write one DOT file per renderable graph into DIR");
  analyze_tol.attach(*analyze);

  std::string name;
  std::string out_path;
  auto* examples = app.add_subcommand("examples", "write a built-in example spec");
  examples->add_option("name", name, "example name")->required();
  examples->add_option("--out", out_path, "output file (default: standard output)");

  OracleOptions oracle_options;
  ToleranceFlags oracle_tol;
  auto* oracle = app.add_subcommand("oracle", "cross-check the analysis with brute-force oracles");
  oracle->add_option("spec", path, "spec file (JSON)")->required();
  oracle->add_option("--pair", pairs, "vertex pair K L (repeatable)");
  oracle->add_option("--samples", oracle_options.attempts, "falsifier restarts")
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--horizon", oracle_options.horizon, "reach simulation horizon T")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--steps", oracle_options.steps, "reach simulation intervals M")
      ->check(CLI::Range(2, 100000));
  oracle->add_option("--seed", oracle_options.seed, "random seed");
  oracle->add_flag("--json", as_json, "print JSON");
  oracle_tol.attach(*oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (analyze->parsed()) return cmd_analyze(path, pairs, as_json, dot_dir, analyze_tol, out, err);
  if (examples->parsed()) return cmd_examples(name, out_path, out, err);
  return cmd_oracle(path, pairs, oracle_options, as_json, oracle_tol, out, err);
}

}  // namespace arrayctl::cli
