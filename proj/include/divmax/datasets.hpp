#pragma once

#include <span>

#include "divmax/graph.hpp"

namespace divmax {

/// Zachary's karate club: 34 members, 78 friendship ties, 0-indexed.
std::span<const Edge> karate_edges();

/// Faction exposure: +1 for the instructor's side, -1 for the officer's side.
/// 17/17 split with 10 cross-faction ties.
ExposureVector karate_factions();

/// Karate club with faction exposure and unit costs.
Instance karate_instance(double budget);

}  // namespace divmax
