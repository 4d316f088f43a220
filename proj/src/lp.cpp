#include "divmax/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Dense>

#include "divmax/error.hpp"

namespace divmax {

std::size_t LinearProgram::add_variable(std::string name, double cost, double lo, double hi) {
  names.push_back(std::move(name));
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (names.size() != n || lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "variable arrays differ in length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw Error(ErrorCode::InvalidValue, "non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] || lower[j] == kInfinity ||
        upper[j] == -kInfinity) {
      throw Error(ErrorCode::InvalidValue, "bad bounds on " + names[j]);
    }
  }
  for (const LpRow& r : rows) {
    if (!std::isfinite(r.rhs)) throw Error(ErrorCode::InvalidValue, "non-finite right-hand side in " + r.name);
    for (const auto& [j, a] : r.coeffs) {
      if (j >= n) throw Error(ErrorCode::IndexOutOfRange, "column index in row " + r.name);
      if (!std::isfinite(a)) throw Error(ErrorCode::InvalidValue, "non-finite coefficient in row " + r.name);
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "optimal";
}

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, double>>;

// How an original variable is expressed through nonnegative columns:
// v = offset + sign * col  (or col - neg for free variables).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t col = 0;
  std::size_t neg = SIZE_MAX;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts) { build(); }

  LpResult solve() {
    LpResult res;
    std::vector<double> phase1(cols_.size(), 0.0);
    for (std::size_t j = first_artificial_; j < cols_.size(); ++j) phase1[j] = -1.0;
    res.status = iterate(phase1, cols_.size());
    if (res.status == LpStatus::IterationLimit) return finish(res);

    double infeas = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= first_artificial_) infeas += xb_[r];
    }
    double bscale = 1.0;
    for (double v : b_) bscale = std::max(bscale, std::abs(v));
    if (infeas > 1e-7 * bscale) {
      res.status = LpStatus::Infeasible;
      return finish(res);
    }
    drive_out_artificials();

    std::vector<double> phase2(cols_.size(), 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    res.status = iterate(phase2, first_artificial_);
    return finish(res);
  }

 private:
  void build() {
    const std::size_t n = lp_.variable_count();
    std::vector<SparseColumn> rows_coeffs;
    std::vector<RowSense> senses;
    map_.resize(n);
    std::size_t ncols = 0;
    std::vector<std::pair<std::size_t, double>> bound_rows;  // (column, upper)
    for (std::size_t j = 0; j < n; ++j) {
      VarMap& v = map_[j];
      const double lo = lp_.lower[j], hi = lp_.upper[j];
      if (std::isfinite(lo)) {
        v.offset = lo;
        v.col = ncols++;
        if (std::isfinite(hi)) bound_rows.emplace_back(v.col, hi - lo);
      } else if (std::isfinite(hi)) {
        v.offset = hi;
        v.sign = -1.0;
        v.col = ncols++;
      } else {
        v.col = ncols++;
        v.neg = ncols++;
      }
    }
    structural_ = ncols;
    cost_.assign(structural_, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const VarMap& v = map_[j];
      cost_[v.col] = v.sign * lp_.objective[j];
      if (v.neg != SIZE_MAX) cost_[v.neg] = -lp_.objective[j];
    }

    for (const LpRow& r : lp_.rows) {
      SparseColumn coeffs;
      double rhs = r.rhs;
      for (const auto& [j, a] : r.coeffs) {
        if (a == 0.0) continue;
        const VarMap& v = map_[j];
        rhs -= a * v.offset;
        coeffs.emplace_back(v.col, v.sign * a);
        if (v.neg != SIZE_MAX) coeffs.emplace_back(v.neg, -a);
      }
      rows_coeffs.push_back(std::move(coeffs));
      senses.push_back(r.sense);
      b_.push_back(rhs);
    }
    for (const auto& [c, u] : bound_rows) {
      rows_coeffs.push_back({{c, 1.0}});
      senses.push_back(RowSense::LessEqual);
      b_.push_back(u);
    }
    m_ = b_.size();
    row_sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] < 0.0) {
        row_sign_[i] = -1.0;
        b_[i] = -b_[i];
        for (auto& e : rows_coeffs[i]) e.second = -e.second;
        if (senses[i] == RowSense::LessEqual) {
          senses[i] = RowSense::GreaterEqual;
        } else if (senses[i] == RowSense::GreaterEqual) {
          senses[i] = RowSense::LessEqual;
        }
      }
    }

    cols_.assign(structural_, {});
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [c, a] : rows_coeffs[i]) cols_[c].emplace_back(i, a);
    }
    basis_.assign(m_, 0);
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m_; ++i) {
      if (senses[i] == RowSense::LessEqual) {
        basis_[i] = cols_.size();
        cols_.push_back({{i, 1.0}});
      } else {
        if (senses[i] == RowSense::GreaterEqual) cols_.push_back({{i, -1.0}});
        needs_artificial.push_back(i);
      }
    }
    first_artificial_ = cols_.size();
    for (std::size_t i : needs_artificial) {
      basis_[i] = cols_.size();
      cols_.push_back({{i, 1.0}});
    }
    in_basis_.assign(cols_.size(), 0);
    for (std::size_t c : basis_) in_basis_[c] = 1;
    refactor();
  }

  void refactor() {
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [i, a] : cols_[basis_[r]]) B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = a;
    }
    binv_ = B.partialPivLu().inverse();
    const Eigen::VectorXd x = binv_ * Eigen::Map<const Eigen::VectorXd>(b_.data(), m);
    xb_.assign(x.data(), x.data() + m);
    for (double& v : xb_) {
      if (v < 0.0 && v > -opts_.tol) v = 0.0;
    }
    since_refactor_ = 0;
  }

  Eigen::VectorXd ftran(std::size_t c) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
    for (const auto& [i, a] : cols_[c]) u += a * binv_.col(static_cast<Eigen::Index>(i));
    return u;
  }

  void pivot(std::size_t r, std::size_t enter, const Eigen::VectorXd& u, double theta) {
    const auto rr = static_cast<Eigen::Index>(r);
    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= theta * u(static_cast<Eigen::Index>(i));
    xb_[r] = theta;
    for (double& v : xb_) {
      if (v < 0.0 && v > -opts_.tol) v = 0.0;
    }
    const Eigen::RowVectorXd pivot_row = binv_.row(rr) / u(rr);
    binv_ -= u * pivot_row;
    binv_.row(rr) = pivot_row;
    in_basis_[basis_[r]] = 0;
    basis_[r] = enter;
    in_basis_[enter] = 1;
    ++pivots_;
    if (++since_refactor_ >= opts_.refactor_every) refactor();
  }

  Eigen::VectorXd duals(const std::vector<double>& cost) const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
    for (std::size_t r = 0; r < m_; ++r) cb(static_cast<Eigen::Index>(r)) = cost[basis_[r]];
    return binv_.transpose() * cb;
  }

  // Columns at or past `enter_limit` may leave the basis but never enter it.
  LpStatus iterate(const std::vector<double>& cost, std::size_t enter_limit) {
    while (true) {
      if (pivots_ >= opts_.max_pivots) return LpStatus::IterationLimit;
      const Eigen::VectorXd pi = duals(cost);
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < enter_limit; ++j) {
        if (in_basis_[j]) continue;
        double d = cost[j];
        for (const auto& [i, a] : cols_[j]) d -= pi(static_cast<Eigen::Index>(i)) * a;
        if (d > opts_.tol) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) return LpStatus::Optimal;

      const Eigen::VectorXd u = ftran(enter);
      std::size_t leave = SIZE_MAX;
      double best = kInfinity;
      for (std::size_t r = 0; r < m_; ++r) {
        const double ur = u(static_cast<Eigen::Index>(r));
        if (ur <= opts_.tol) continue;
        const double theta = xb_[r] / ur;
        if (theta < best - opts_.tol ||
            (theta <= best + opts_.tol && leave != SIZE_MAX && basis_[r] < basis_[leave])) {
          best = std::min(best, theta);
          leave = r;
        }
      }
      if (leave == SIZE_MAX) return LpStatus::Unbounded;
      pivot(leave, enter, u, std::max(0.0, xb_[leave] / u(static_cast<Eigen::Index>(leave))));
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      const Eigen::RowVectorXd row = binv_.row(static_cast<Eigen::Index>(r));
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (in_basis_[j]) continue;
        double a = 0.0;
        for (const auto& [i, v] : cols_[j]) a += row(static_cast<Eigen::Index>(i)) * v;
        if (std::abs(a) > 1e-7) {
          pivot(r, j, ftran(j), 0.0);
          break;
        }
      }
    }
  }

  LpResult& finish(LpResult& res) {
    std::vector<double> col_value(cols_.size(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) col_value[basis_[r]] = xb_[r];
    const std::size_t n = lp_.variable_count();
    res.x.assign(n, 0.0);
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const VarMap& v = map_[j];
      double x = v.offset + v.sign * col_value[v.col];
      if (v.neg != SIZE_MAX) x -= col_value[v.neg];
      res.x[j] = x;
      res.value += lp_.objective[j] * x;
    }
    std::vector<double> cost(cols_.size(), 0.0);
    std::copy(cost_.begin(), cost_.end(), cost.begin());
    const Eigen::VectorXd pi = duals(cost);
    res.duals.assign(lp_.rows.size(), 0.0);
    for (std::size_t i = 0; i < lp_.rows.size(); ++i) res.duals[i] = row_sign_[i] * pi(static_cast<Eigen::Index>(i));
    res.pivots = pivots_;
    return res;
  }

  const LinearProgram& lp_;
  SimplexOptions opts_;
  std::vector<VarMap> map_;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t m_ = 0;
  std::vector<double> cost_;
  std::vector<double> b_;
  std::vector<double> row_sign_;
  std::vector<SparseColumn> cols_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  Eigen::MatrixXd binv_;
  std::vector<double> xb_;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_terms(std::ostream& out, const std::vector<std::pair<std::size_t, double>>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& [j, a] : terms) {
    if (a == 0.0) continue;
    if (first) {
      if (a < 0.0) out << "- ";
    } else {
      out << (a < 0.0 ? " - " : " + ");
    }
    const double mag = std::abs(a);
    if (mag != 1.0) out << fmt17(mag) << ' ';
    out << names[j];
    first = false;
  }
  if (first) out << "0 " << (names.empty() ? "x" : names[0]);
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  lp.validate();
  Simplex s(lp, opts);
  return s.solve();
}

void export_lp(const LinearProgram& lp, std::ostream& out) {
  lp.validate();
  std::vector<std::pair<std::size_t, double>> obj;
  for (std::size_t j = 0; j < lp.variable_count(); ++j) obj.emplace_back(j, lp.objective[j]);
  out << "Maximize\n obj: ";
  write_terms(out, obj, lp.names);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const LpRow& r = lp.rows[i];
    out << ' ' << (r.name.empty() ? "r" + std::to_string(i + 1) : r.name) << ": ";
    write_terms(out, r.coeffs, lp.names);
    out << (r.sense == RowSense::LessEqual ? " <= " : r.sense == RowSense::GreaterEqual ? " >= " : " = ")
        << fmt17(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    const double lo = lp.lower[j], hi = lp.upper[j];
    out << ' ';
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << lp.names[j] << " free";
    } else if (!std::isfinite(lo)) {
      out << "-inf <= " << lp.names[j] << " <= " << fmt17(hi);
    } else if (!std::isfinite(hi)) {
      out << lp.names[j] << " >= " << fmt17(lo);
    } else {
      out << fmt17(lo) << " <= " << lp.names[j] << " <= " << fmt17(hi);
    }
    out << "\n";
  }
  out << "End\n";
  if (!out) throw Error(ErrorCode::IoFailure, "writing LP file");
}

}  // namespace divmax
