#pragma once

#include <cstddef>
#include <vector>

#include "divmax/graph.hpp"
#include "divmax/lp.hpp"
#include "divmax/objective.hpp"
#include "divmax/report.hpp"
#include "divmax/rounding.hpp"

namespace divmax {

/// Row-wise sign split of P, diagonal included:
/// U_i = sum_j max(P_ij, 0), L_i = sum_j min(P_ij, 0).
struct GloverBounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

GloverBounds compute_LU(const ObjectiveMatrix& p);

/// Linearized model over x in [0, 1]^n and free z: maximize sum_i z_i subject
/// to the budget row b^T x <= k and, for every i,
///   L_i x_i <= z_i <= U_i x_i,
///   z_i <= sum_j P_ij x_j - L_i (1 - x_i),
///   z_i >= sum_j P_ij x_j - U_i (1 - x_i).
/// Variables are named x1..xn, z1..zn.
LinearProgram build_glover_lp(const Instance& inst, const ObjectiveMatrix& p);

inline constexpr std::size_t kDefaultSimplexCeiling = 600;

struct GloverRelaxation {
  std::vector<double> x;
  /// LP optimum in gain units.
  double value = 0.0;
  std::size_t pivots = 0;
};

/// Throws DimensionTooLarge when 2n exceeds `max_structural`, Unbounded or
/// Infeasible if the simplex reports so (neither happens for a valid instance).
GloverRelaxation solve_glover_relaxation(const Instance& inst, const ObjectiveMatrix& p,
                                         std::size_t max_structural = kDefaultSimplexCeiling);

/// Best of `opts.samples` independent Bernoulli roundings of x_frac (each
/// redrawn until feasible, repaired after the cap), optionally polished.
SolverReport round_lp(std::span<const double> x_frac, const Instance& inst, const ObjectiveMatrix& p,
                      const RoundingOptions& opts = {});

/// Relaxation plus rounding; the report carries the LP value as
/// `relaxation_bound`.
SolverReport glover_relax(const Instance& inst, const ObjectiveMatrix& p, const RoundingOptions& opts = {},
                          std::size_t max_structural = kDefaultSimplexCeiling);

}  // namespace divmax
