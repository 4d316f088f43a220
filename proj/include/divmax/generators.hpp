#pragma once

#include <cstdint>
#include <vector>

#include "divmax/graph.hpp"

namespace divmax {

/// Two equal blocks; each intra-block pair is an edge with probability p_in,
/// each inter-block pair with probability p_out. Exposure is +1 on the first
/// block and -1 on the second, costs are 1. Throws InvalidProbability unless
/// 0 <= p_out <= p_in <= 1, and InvalidValue for odd n.
Instance gen_two_community(std::size_t n, double p_in, double p_out, std::uint64_t seed, double budget = 0.0);

/// Same graph, costs and budget; exposure drawn uniformly from {-1, +1}.
Instance gen_random_exposure(const Instance& inst, std::uint64_t seed);

/// Subset-sum reduction: a star with centre 0, leaves 1..n joined with weight
/// -m_i and leaf n+1 with weight A + 1 - M (A = sum m_i), so that
/// P_00 = 1 - M; costs
/// (0, m_1, ..., m_n, M + 1), budget M, exposure all +1. The optimum is 1
/// when some subset of m sums to exactly M and 0 otherwise.
/// Throws NonPositiveInput.
Instance gen_subsetsum(const std::vector<std::int64_t>& m, std::int64_t M);

}  // namespace divmax
