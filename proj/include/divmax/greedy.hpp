#pragma once

#include <cstddef>
#include <cstdint>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"
#include "divmax/report.hpp"

namespace divmax {

struct GreedyConfig {
  /// Local-search restarts; must be at least 1.
  std::size_t iterations = 1;
  std::uint64_t seed = 1;
  /// Record the incumbent after every addition, not only when the budget is
  /// exhausted. `false` reproduces the printed pseudocode exactly.
  bool track_prefix = true;
};

/// Three-way comparison of gain/cost ratios: positive when (gain_a, cost_a)
/// ranks strictly above (gain_b, cost_b). Zero-cost nodes with positive gain
/// rank above every finite ratio, zero-cost nodes with negative gain below.
/// Finite ratios are compared by cross-multiplication.
int compare_ratio(double gain_a, double cost_a, double gain_b, double cost_b);

/// Scans nodes by descending P_ii / b_i (lowest index on ties) and keeps
/// every node whose cost still fits in the budget.
SolverReport s_greedy(const Instance& inst, const ObjectiveMatrix& p);

/// Iterative greedy with randomized local search. Throws InvalidValue when
/// cfg.iterations == 0.
SolverReport i_greedy(const Instance& inst, const ObjectiveMatrix& p, const GreedyConfig& cfg);

/// Same search started from a feasible selection (used to polish rounded
/// relaxation solutions). Throws InvalidValue if `start` is infeasible.
SolverReport i_greedy_from(const Instance& inst, const ObjectiveMatrix& p, const GreedyConfig& cfg,
                           const FlipSet& start);

}  // namespace divmax
