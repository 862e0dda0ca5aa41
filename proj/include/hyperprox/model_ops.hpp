#pragma once

#include <string>
#include <string_view>

#include "hyperprox/hyperspace.hpp"
#include "hyperprox/model_file.hpp"

namespace hyperprox {

/// Hypertopology names as accepted on the command line:
///   vietoris | trivial | fell | fell:all | hitmiss:<ref>+<ref>...
///   far_miss | sf_miss | far_miss_only | sf_miss_only
/// `fell` uses the model's ideal. Throws Error(spec_invalid).
TopologySpec resolve_topology_spec(const Model& model, std::string_view name);

/// Runs one replay operation and renders its result as text ("true",
/// "pass", a classification, a comparison verdict). Throws
/// Error(malformed_witness) for unknown ops or bad arguments.
std::string execute_call(const Model& model, const ReplayCall& call);

}  // namespace hyperprox
