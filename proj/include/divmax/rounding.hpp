#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"
#include "divmax/rng.hpp"

namespace divmax {

struct RoundingOptions {
  /// Number of independent samples I.
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  /// Run i_greedy local search from the best rounded selection.
  bool polish = true;
  std::size_t polish_iterations = 100;
  /// Bernoulli redraws per sample before falling back to repair.
  std::size_t attempts_cap = 1000;
};

/// Drops selected nodes in ascending P_ii / b_i order (highest index first on
/// ties) until the budget holds.
std::vector<std::size_t> repair_to_budget(const Instance& inst, const ObjectiveMatrix& p,
                                          std::vector<std::size_t> nodes);

/// x_i = 1 with probability prob_i, redrawn until b^T x <= k. After
/// `attempts_cap` infeasible draws the last one is repaired.
std::vector<std::size_t> bernoulli_round(std::span<const double> prob, const Instance& inst,
                                         const ObjectiveMatrix& p, Rng& rng, std::size_t attempts_cap);

}  // namespace divmax
