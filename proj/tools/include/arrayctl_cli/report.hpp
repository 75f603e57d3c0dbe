#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrayctl/controllability.hpp"
#include "arrayctl/oracle.hpp"

namespace arrayctl::cli {

inline constexpr int kReportVersion = 1;

/// mu rounded to 9 significant digits of |mu|, e.g. "0+1.93185165j" or "-1".
std::string format_mu(Complex mu);

nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

nlohmann::json oracles_to_json(const std::vector<OracleVerdict>& verdicts);
std::string oracles_to_text(const std::vector<OracleVerdict>& verdicts);

/// Writes <name>_<kind>_k<kappa>.dot for every renderable eigenvalue graph (Q-graphs only when
/// the report has pairs). Returns the written paths; graphs with hyperedges are skipped.
std::vector<std::string> write_dot_files(const ArrayAnalyzer& analyzer, const AnalysisReport& report,
                                         const std::string& directory);

}  // namespace arrayctl::cli
