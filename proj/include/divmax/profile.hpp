#pragma once

#include <cstddef>
#include <vector>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"

namespace divmax {

/// PageRank with uniform teleport; dangling mass is spread uniformly and edge
/// weights enter through their absolute values. Iterates until the L1 change
/// drops below `tol`.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10, std::size_t max_iters = 10000);

struct NodeProfile {
  std::size_t node = 0;
  /// Neighbours sharing the node's exposure.
  std::size_t echo_chamber = 0;
  /// Neighbour count.
  std::size_t degree = 0;
  double pagerank = 0.0;
  /// 1-based competition ranks among all n nodes, largest value first.
  std::size_t echo_rank = 0;
  std::size_t degree_rank = 0;
  std::size_t pagerank_rank = 0;
};

/// One profile per node in `order` (typically the order in which a solver
/// picked them).
std::vector<NodeProfile> node_profile(const Instance& inst, const std::vector<std::size_t>& order);
std::vector<NodeProfile> node_profile(const Instance& inst, const FlipSet& selection);

}  // namespace divmax
