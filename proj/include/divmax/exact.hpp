#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"
#include "divmax/report.hpp"

namespace divmax {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 50'000'000;

/// Number of selections with b^T x <= k, counting stops once it exceeds `cap`.
std::uint64_t count_feasible_subsets(const Instance& inst, std::uint64_t cap);

/// Exhaustive search over every feasible selection. Returns the
/// lexicographically smallest optimal node list. Throws SearchSpaceTooLarge
/// when more than `limit` selections are feasible.
SolverReport enumerate_exact(const Instance& inst, const ObjectiveMatrix& p,
                             std::uint64_t limit = kDefaultEnumerationLimit);

enum class BoundKind { Eigen, Gersh, Rowsum, None };

const char* to_string(BoundKind kind);
/// Throws ParseError for anything other than eigen, gersh, rowsum or none.
BoundKind parse_bound_kind(const std::string& name);

struct BranchAndBoundOptions {
  BoundKind bound = BoundKind::Rowsum;
  /// Seconds; zero or negative disables the limit.
  double time_limit = 60.0;
  bool prune = true;
  /// Seed the incumbent with i_greedy.
  bool warm_start = true;
  std::size_t warm_start_iterations = 50;
  std::uint64_t seed = 1;
};

/// Depth-first include/exclude search in descending P_ii order. A subtree is
/// pruned when value + bound(remainder) <= incumbent, where the remainder is
/// the QBK on the undecided affordable nodes with the linear terms of the
/// decided ones folded into its diagonal. Pruning is disabled when some cost
/// is below one (the bounds are unsound there). On timeout the incumbent is
/// returned with status "timeout" and proven_optimal == false.
SolverReport branch_and_bound(const Instance& inst, const ObjectiveMatrix& p, const BranchAndBoundOptions& opts = {});

}  // namespace divmax
