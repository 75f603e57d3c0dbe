#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "arrayctl/array_model.hpp"

namespace arrayctl::cli {

/// Malformed spec file: bad JSON, missing or unknown keys, wrong shapes.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecFile {
  ArraySpec spec;
  Tolerances tolerances;  // file values over the library defaults
};

/// Parses a spec document. Dimensions are cross-checked against "n", "q", "p"; the relative
/// actuation constraint is left to validate_array.
SpecFile parse_spec(const nlohmann::json& doc);
SpecFile parse_spec_text(const std::string& text);
SpecFile load_spec(const std::string& path);

/// Spec document with B written as a row-major incidence matrix.
nlohmann::json spec_to_json(const ArraySpec& spec);

}  // namespace arrayctl::cli
