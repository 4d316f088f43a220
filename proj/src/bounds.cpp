#include "divmax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "divmax/error.hpp"
#include "divmax/rng.hpp"

namespace divmax {

namespace {

double sum_top(std::vector<double>& values, std::size_t k) {
  k = std::min(k, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += values[i];
  return s;
}

}  // namespace

PowerIterationResult estimate_lambda_max(const ObjectiveMatrix& p, double tol, std::size_t max_iters) {
  const std::size_t n = p.size();
  PowerIterationResult res;
  if (n == 0) return res;

  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, std::abs(p.diagonal(i)) + p.offdiag_abs_sum(i));
  if (shift == 0.0) return res;  // P == 0

  if (max_iters == 0) max_iters = std::max<std::size_t>(10 * n, kMinPowerIterations);

  // Strictly positive start vector: the top eigenvector of a shifted matrix
  // can not be orthogonal to it with probability one.
  Rng rng(0x5eedULL);
  std::vector<double> v(n), w(n);
  double norm = 0.0;
  for (double& x : v) {
    x = 0.5 + rng.uniform01();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;

  double theta = 0.0;
  double prev_change = 0.0;
  res.converged = false;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = (p.diagonal(i) + shift) * v[i];
      for (const Neighbor& e : p.row(i)) acc += e.weight * v[e.node];
      w[i] = acc;
    }
    double rq = 0.0;
    double wn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rq += v[i] * w[i];
      wn += w[i] * w[i];
    }
    wn = std::sqrt(wn);
    res.iterations = it;
    // The Rayleigh quotient of the shifted matrix increases geometrically
    // towards the top eigenvalue; extrapolate the remaining tail.
    const double change = std::abs(rq - theta);
    bool small_change = false;
    if (it > 2 && change <= tol * std::abs(rq)) {
      const double ratio = prev_change > 0.0 ? change / prev_change : 0.0;
      small_change = ratio < 1.0 && change * ratio / (1.0 - ratio) <= tol * std::abs(rq);
    }
    prev_change = change;
    theta = rq;
    if (wn == 0.0) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    if (small_change) {
      res.converged = true;
      break;
    }
  }
  res.lambda_max = theta - shift;
  return res;
}

EigenBound bound_eigen(const ObjectiveMatrix& p, double k, double tol, std::size_t max_iters) {
  if (!(k >= 0.0)) throw Error(ErrorCode::InvalidValue, "budget must be nonnegative");
  const PowerIterationResult pi = estimate_lambda_max(p, tol, max_iters);
  EigenBound b;
  b.lambda_max = pi.lambda_max;
  b.iterations = pi.iterations;
  b.converged = pi.converged;
  b.value = pi.converged ? std::max(0.0, k * pi.lambda_max) : bound_gersh(p, k);
  return b;
}

double gershgorin_max(const ObjectiveMatrix& p) {
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) g = std::max(g, p.diagonal(i) + p.offdiag_abs_sum(i));
  return p.size() == 0 ? 0.0 : g;
}

double bound_gersh(const ObjectiveMatrix& p, double k) {
  if (!(k >= 0.0)) throw Error(ErrorCode::InvalidValue, "budget must be nonnegative");
  return std::max(0.0, k * gershgorin_max(p));
}

double bound_rowsum(const ObjectiveMatrix& p, std::size_t k) {
  const std::size_t n = p.size();
  if (k == 0 || n == 0) return 0.0;
  std::vector<double> rows(n, 0.0);
  std::vector<double> entries;
  for (std::size_t i = 0; i < n; ++i) {
    entries.clear();
    if (p.diagonal(i) >= 0.0) entries.push_back(p.diagonal(i));
    for (const Neighbor& e : p.row(i)) {
      if (e.weight >= 0.0) entries.push_back(e.weight);
    }
    rows[i] = sum_top(entries, k);
  }
  return sum_top(rows, k);
}

bool has_unit_class_costs(const Instance& inst) {
  return std::all_of(inst.costs.begin(), inst.costs.end(), [](double b) { return b >= 1.0; });
}

std::size_t cardinality_budget(const Instance& inst) {
  if (!has_unit_class_costs(inst)) {
    throw Error(ErrorCode::UnsupportedCosts, "upper bounds need every node cost >= 1");
  }
  if (inst.costs.empty()) return 0;
  const double min_cost = *std::min_element(inst.costs.begin(), inst.costs.end());
  const double card = std::floor(inst.budget / min_cost + 1e-9);
  return static_cast<std::size_t>(std::min(card, static_cast<double>(inst.size())));
}

BoundReport compute_bounds(const Instance& inst, const ObjectiveMatrix& p, double tol) {
  BoundReport r;
  r.cardinality = cardinality_budget(inst);
  const double k = static_cast<double>(r.cardinality);
  const EigenBound eb = bound_eigen(p, k, tol);
  r.eigen_bound = eb.value;
  r.lambda_max_estimate = eb.lambda_max;
  r.power_iters_used = eb.iterations;
  r.eigen_converged = eb.converged;
  r.gersh_bound = bound_gersh(p, k);
  r.rowsum_bound = bound_rowsum(p, r.cardinality);
  return r;
}

}  // namespace divmax
