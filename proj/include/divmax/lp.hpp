#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace divmax {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LpRow {
  std::string name;
  std::vector<std::pair<std::size_t, double>> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// max c^T v subject to linear rows and per-variable bounds (either side may
/// be infinite).
struct LinearProgram {
  std::vector<std::string> names;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  std::size_t variable_count() const noexcept { return objective.size(); }
  /// Appends a variable and returns its index.
  std::size_t add_variable(std::string name, double cost, double lo, double hi);
  /// Throws InvalidValue on non-finite coefficients or crossed bounds, and
  /// IndexOutOfRange on bad column indices.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  std::vector<double> x;
  /// One multiplier per row: d(value)/d(rhs).
  std::vector<double> duals;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double tol = 1e-9;
  /// Rebuild B^-1 from scratch every this many pivots.
  std::size_t refactor_every = 50;
  std::size_t max_pivots = 1'000'000;
};

/// Dense two-phase revised simplex with Bland's rule for both pricing and
/// the ratio test. Bounds are folded into the rows, free variables split.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

/// CPLEX LP text (Maximize / Subject To / Bounds / End), 17 significant digits.
void export_lp(const LinearProgram& lp, std::ostream& out);

}  // namespace divmax
