#pragma once

#include <cstddef>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"

namespace divmax {

inline constexpr std::size_t kMinPowerIterations = 10000;

struct PowerIterationResult {
  double lambda_max = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

/// Most-positive eigenvalue of P by power iteration on P + cI, where
/// c = max_i(|P_ii| + sum_{j != i} |P_ij|) makes the shifted spectrum
/// nonnegative. Stops when the relative change of the Rayleigh quotient and
/// its geometric tail estimate both drop below `tol`, or after `max_iters`
/// steps (0 means max(10 n, kMinPowerIterations)).
PowerIterationResult estimate_lambda_max(const ObjectiveMatrix& p, double tol = 1e-9, std::size_t max_iters = 0);

struct EigenBound {
  double value = 0.0;
  double lambda_max = 0.0;
  std::size_t iterations = 0;
  /// False when the iteration cap was hit; `value` is then the Gerschgorin bound.
  bool converged = true;
};

/// max(0, k * lambda_max(P)).
EigenBound bound_eigen(const ObjectiveMatrix& p, double k, double tol = 1e-9, std::size_t max_iters = 0);

/// max_i (P_ii + sum_{j != i} |P_ij|)
double gershgorin_max(const ObjectiveMatrix& p);
/// max(0, k * gershgorin_max(P)).
double bound_gersh(const ObjectiveMatrix& p, double k);

/// Sum of the k largest row bounds r_i, where r_i adds the min(k, count)
/// largest nonnegative entries of row i (diagonal included).
double bound_rowsum(const ObjectiveMatrix& p, std::size_t k);

struct BoundReport {
  double eigen_bound = 0.0;
  double gersh_bound = 0.0;
  double rowsum_bound = 0.0;
  double lambda_max_estimate = 0.0;
  std::size_t power_iters_used = 0;
  bool eigen_converged = true;
  /// Largest number of nodes any feasible selection can hold.
  std::size_t cardinality = 0;
};

/// True when every cost is at least one, the setting in which the bounds hold.
bool has_unit_class_costs(const Instance& inst);

/// floor(k / min_i b_i) capped at n. Throws UnsupportedCosts when some b_i < 1.
std::size_t cardinality_budget(const Instance& inst);

/// All three bounds for an instance. Throws UnsupportedCosts when some b_i < 1.
BoundReport compute_bounds(const Instance& inst, const ObjectiveMatrix& p, double tol = 1e-9);

}  // namespace divmax
