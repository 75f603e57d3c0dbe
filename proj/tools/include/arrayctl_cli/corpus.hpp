#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrayctl/array_model.hpp"

namespace arrayctl::cli {

/// Names accepted by `arrayctl examples`.
const std::vector<std::string>& example_names();

/// The named example array, or nothing for an unknown name.
std::optional<ArraySpec> example(const std::string& name);

ArraySpec watertanks();
ArraySpec watertanks_ring();
/// Three 10th-order LC oscillators in a ring; `variant` is 'a' or 'b'.
ArraySpec oscillators(char variant);
ArraySpec counterexample_23();
/// Chain of `n` integrators per system, three systems coupled by a directed triangle.
ArraySpec integrator_chain_ring(int n = 2);

}  // namespace arrayctl::cli
