#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"

namespace divmax {

/// Outcome of one solver run. `gain` is x^T P x; the raw diversity index
/// after flipping is eta(s) + 4 * gain, and the normalized one is
/// eta(s) / 4 + gain.
struct SolverReport {
  std::string algorithm;
  FlipSet selection;
  double gain = 0.0;
  double eta_before = 0.0;
  double value_raw = 0.0;
  double value_normalized = 0.0;
  /// Relaxation optimum in gain units (SDP trace or LP value), if any.
  std::optional<double> relaxation_bound;
  bool feasible = true;
  bool proven_optimal = false;
  /// "ok", "timeout" or "nonconvergence".
  std::string status = "ok";
  std::uint64_t seed = 0;
  /// Solver-specific work counter: B&B nodes, simplex pivots, ADMM iterations...
  std::size_t work = 0;
  double runtime_ms = 0.0;
};

/// Budget check with a small relative slack for accumulated cost sums.
bool within_budget(double cost, double budget);

SolverReport make_report(std::string algorithm, const Instance& inst, FlipSet selection, std::uint64_t seed = 0);

}  // namespace divmax
