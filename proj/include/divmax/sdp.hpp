#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "divmax/graph.hpp"
#include "divmax/objective.hpp"
#include "divmax/report.hpp"
#include "divmax/rounding.hpp"

namespace divmax {

/// Lifted relaxation of max x^T P x s.t. b^T x <= k over the bordered matrix
///   Y = [[X, x], [x^T, 1]] >= 0,  diag(X) = x,  <bb^T, X> <= k^2.
/// With `diagonal_cut` the weaker <Diag(b), X> <= k is added as a redundant row.
struct SdpProblem {
  ObjectiveMatrix objective;
  std::vector<double> costs;
  double budget = 0.0;
  bool diagonal_cut = true;

  std::size_t size() const noexcept { return objective.size(); }
  /// Number of equality constraints in standard form: n + 2 (+1 with the cut).
  std::size_t constraint_count() const noexcept { return size() + (diagonal_cut ? 3 : 2); }
};

SdpProblem make_sdp_problem(const Instance& inst, const ObjectiveMatrix& p, bool diagonal_cut = true);

struct SdpResiduals {
  /// max(|X_ii - x_i|, |Y_nn - 1|)
  double diag_violation = 0.0;
  /// max(0, <bb^T, X> - k^2) / max(1, k^2)
  double knapsack_violation = 0.0;
  /// max(0, -lambda_min(Y))
  double psd_violation = 0.0;

  double max() const;
};

struct SdpSolution {
  /// Bordered primal matrix, (n+1) x (n+1).
  Eigen::MatrixXd Y;
  Eigen::MatrixXd X;
  /// Last column of Y clamped to [0, 1].
  Eigen::VectorXd x;
  /// Knapsack slacks (one per inequality row), scaled as in `export_sdpa`.
  Eigen::VectorXd slack;
  /// Dual multipliers, one per constraint, in the sign convention of the SDPA
  /// primal vector (the dual bound is c^T y).
  Eigen::VectorXd y;
  /// Dual slack for the bordered block and the diagonal block.
  Eigen::MatrixXd S;
  Eigen::VectorXd S_diag;
  /// <P, X>, in gain units.
  double objective_value = 0.0;
  /// Dual objective plus a PSD-defect correction, in gain units: a valid
  /// upper bound on the relaxation (and the QBK optimum) at any iterate.
  double dual_bound = 0.0;
  SdpResiduals residuals;
  std::size_t iterations = 0;
  bool converged = false;
};

struct SdpOptions {
  /// Stopping tolerance on the scaled primal, dual and gap residuals and on
  /// the reported residuals.
  double tol = 1e-5;
  std::size_t max_iters = 2000;
  /// DimensionTooLarge above this n.
  std::size_t max_dimension = 300;
  double mu0 = 1.0;
};

/// Alternating-direction augmented Lagrangian on the standard-form dual with
/// a dense eigendecomposition per iteration to project onto the PSD cone.
/// Returns the last iterate with converged == false when the iteration cap
/// is hit. Throws DimensionTooLarge.
SdpSolution solve_sdp_relaxation(const SdpProblem& prob, const SdpOptions& opts = {});

/// Residuals of a bordered matrix and slack vector against `prob`.
SdpResiduals compute_residuals(const SdpProblem& prob, const Eigen::MatrixXd& Y, const Eigen::VectorXd& slack);

/// Samples z ~ N(x*, X* - x* x*^T) clipped to [0, 1] and rounds each sample
/// coordinate-wise; returns the best feasible selection (polished if asked).
SolverReport gaussian_round(const SdpSolution& sol, const Instance& inst, const ObjectiveMatrix& p,
                            const RoundingOptions& opts = {});

/// Relaxation, rounding and optional polish in one call; the report carries
/// the relaxation value as `relaxation_bound`.
SolverReport sdp_relax(const Instance& inst, const ObjectiveMatrix& p, const SdpOptions& sdp = {},
                       const RoundingOptions& rounding = {});

/// Sparse SDPA ".dat-s" text. Constraint rows, in order: Y_nn = 1;
/// Y_ii - Y_in = 0 for each i; <bb^T, X> + max(1, k^2) t_1 = k^2;
/// <Diag(b), X> + max(1, k) t_2 = k (with the cut). Block 1 is the bordered
/// matrix, block 2 is diagonal and holds the slacks. F0 is the objective padded with a zero row and column.
void export_sdpa(const SdpProblem& prob, std::ostream& out);

/// Solution text: the dual vector on the first line, then "matno blk i j v"
/// entries with matno 1 for the dual slack and matno 2 for the primal matrix.
void export_sdpa_solution(const SdpProblem& prob, const SdpSolution& sol, std::ostream& out);

/// Reads a solution written by `export_sdpa_solution` or an external engine
/// in the same layout. Throws ParseError or DimensionMismatch.
SdpSolution import_sdpa_solution(std::istream& in, const SdpProblem& prob);

}  // namespace divmax
