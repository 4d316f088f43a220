#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divmax/graph.hpp"

namespace divmax {

/// An instance together with the original node identifiers, indexed by the
/// dense node number.
struct LoadedInstance {
  Instance instance;
  std::vector<std::string> ids;
};

/// Edge lines are "src dst [weight]" (weight defaults to 1), exposure lines
/// "id value" with value in {-1, +1}, cost lines "id cost". Identifiers are
/// arbitrary tokens, numbered in order of first appearance in the edge list.
/// Lines starting with '#' and blank lines are skipped. Nodes without a cost
/// line cost 1.
///
/// Throws ParseError (with the line number), UnknownNodeInExposure,
/// NonBinaryExposure, and the graph-construction errors.
LoadedInstance read_instance(std::istream& edges, std::istream& exposure, std::istream* costs, double budget);

/// File-based wrapper; throws IoFailure when a file cannot be opened.
LoadedInstance load_instance(const std::string& edge_path, const std::string& exposure_path,
                             const std::optional<std::string>& cost_path, double budget);

/// Plain identifiers 0..n-1.
std::vector<std::string> default_ids(std::size_t n);

void write_edges(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids);
void write_exposure(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids);
void write_costs(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids);

/// Writes <prefix>.edges, <prefix>.exposure and <prefix>.costs.
void save_instance(const std::string& prefix, const LoadedInstance& inst);

}  // namespace divmax
