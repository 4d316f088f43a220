#include "divmax/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "divmax/bounds.hpp"
#include "divmax/error.hpp"
#include "divmax/greedy.hpp"

namespace divmax {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Selection with an incrementally maintained gain vector:
// lin[j] = P_jj + 2 sum_{i in x, i != j} P_ij.
struct IncrementalSelection {
  IncrementalSelection(const ObjectiveMatrix& p, std::span<const double> costs)
      : p(p), costs(costs), lin(p.diagonal().begin(), p.diagonal().end()), in(p.size(), 0) {}

  void add(std::size_t j) {
    value += lin[j];
    cost += costs[j];
    in[j] = 1;
    nodes.push_back(j);
    for (const Neighbor& e : p.row(j)) lin[e.node] += 2.0 * e.weight;
  }

  void remove_last() {
    const std::size_t j = nodes.back();
    nodes.pop_back();
    in[j] = 0;
    for (const Neighbor& e : p.row(j)) lin[e.node] -= 2.0 * e.weight;
    value -= lin[j];
    cost -= costs[j];
  }

  const ObjectiveMatrix& p;
  std::span<const double> costs;
  std::vector<double> lin;
  std::vector<char> in;
  std::vector<std::size_t> nodes;
  double value = 0.0;
  double cost = 0.0;
};

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const ObjectiveMatrix& p, const BranchAndBoundOptions& opts)
      : inst_(inst), p_(p), opts_(opts), sel_(p, inst.costs), order_(p.size()), scratch_flag_(p.size(), 0) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return p.diagonal(a) > p.diagonal(b); });
    pruning_ = opts.prune && opts.bound != BoundKind::None && has_unit_class_costs(inst);
    deadline_ = opts.time_limit > 0.0
                    ? Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.time_limit))
                    : Clock::time_point::max();
  }

  void set_incumbent(std::vector<std::size_t> nodes, double value) {
    best_nodes_ = std::move(nodes);
    best_value_ = value;
  }

  void run() { search(0); }

  bool timed_out() const { return timed_out_; }
  std::size_t nodes_explored() const { return explored_; }
  const std::vector<std::size_t>& best_nodes() const { return best_nodes_; }

 private:
  void search(std::size_t depth) {
    if (timed_out_) return;
    if ((++explored_ & 1023U) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (sel_.value > best_value_) set_incumbent(sel_.nodes, sel_.value);
    if (depth == order_.size()) return;
    if (pruning_ && sel_.value + remainder_bound(depth) <= best_value_) return;

    const std::size_t j = order_[depth];
    if (within_budget(sel_.cost + inst_.costs[j], inst_.budget)) {
      sel_.add(j);
      search(depth + 1);
      sel_.remove_last();
    }
    search(depth + 1);
  }

  // Upper bound on the best additional gain from nodes order_[depth..].
  double remainder_bound(std::size_t depth) {
    const double residual = inst_.budget - sel_.cost;
    candidates_.clear();
    double min_cost = std::numeric_limits<double>::infinity();
    for (std::size_t d = depth; d < order_.size(); ++d) {
      const std::size_t j = order_[d];
      if (within_budget(inst_.costs[j], residual)) {
        candidates_.push_back(j);
        min_cost = std::min(min_cost, inst_.costs[j]);
      }
    }
    if (candidates_.empty()) return 0.0;
    const double card_d = std::floor(residual / min_cost + 1e-9);
    const std::size_t card = static_cast<std::size_t>(std::min(card_d, static_cast<double>(candidates_.size())));
    if (card == 0) return 0.0;

    for (std::size_t j : candidates_) scratch_flag_[j] = 1;
    double bound = 0.0;
    switch (opts_.bound) {
      case BoundKind::Rowsum: bound = rowsum(card); break;
      case BoundKind::Gersh: bound = gersh(card); break;
      case BoundKind::Eigen: bound = eigen(card); break;
      case BoundKind::None: bound = std::numeric_limits<double>::infinity(); break;
    }
    for (std::size_t j : candidates_) scratch_flag_[j] = 0;
    return bound;
  }

  double rowsum(std::size_t card) {
    row_bounds_.clear();
    for (std::size_t j : candidates_) {
      entries_.clear();
      if (sel_.lin[j] >= 0.0) entries_.push_back(sel_.lin[j]);
      for (const Neighbor& e : p_.row(j)) {
        if (scratch_flag_[e.node] && e.weight >= 0.0) entries_.push_back(e.weight);
      }
      row_bounds_.push_back(top_sum(entries_, card));
    }
    return top_sum(row_bounds_, card);
  }

  double gersh(std::size_t card) {
    double g = -std::numeric_limits<double>::infinity();
    for (std::size_t j : candidates_) {
      double r = sel_.lin[j];
      for (const Neighbor& e : p_.row(j)) {
        if (scratch_flag_[e.node]) r += std::abs(e.weight);
      }
      g = std::max(g, r);
    }
    return std::max(0.0, static_cast<double>(card) * g);
  }

  double eigen(std::size_t card) {
    std::vector<std::size_t> local(p_.size(), 0);
    std::vector<double> diag;
    diag.reserve(candidates_.size());
    for (std::size_t a = 0; a < candidates_.size(); ++a) {
      local[candidates_[a]] = a;
      diag.push_back(sel_.lin[candidates_[a]]);
    }
    std::vector<Edge> off;
    for (std::size_t j : candidates_) {
      for (const Neighbor& e : p_.row(j)) {
        if (scratch_flag_[e.node] && j < e.node) off.push_back(Edge{local[j], local[e.node], e.weight});
      }
    }
    const ObjectiveMatrix sub = objective_from_parts(std::move(diag), off);
    const PowerIterationResult pi = estimate_lambda_max(sub, 1e-10, 100 * sub.size() + 100);
    if (!pi.converged) return std::max(0.0, static_cast<double>(card) * gershgorin_max(sub));
    // Rayleigh quotients approach lambda_max from below; pad by the accuracy target.
    const double lambda = pi.lambda_max + 1e-6 * (1.0 + std::abs(pi.lambda_max));
    return std::max(0.0, static_cast<double>(card) * lambda);
  }

  static double top_sum(std::vector<double>& v, std::size_t k) {
    k = std::min(k, v.size());
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += v[i];
    return s;
  }

  const Instance& inst_;
  const ObjectiveMatrix& p_;
  BranchAndBoundOptions opts_;
  IncrementalSelection sel_;
  std::vector<std::size_t> order_;
  std::vector<char> scratch_flag_;
  std::vector<std::size_t> candidates_;
  std::vector<double> row_bounds_;
  std::vector<double> entries_;
  bool pruning_ = false;
  Clock::time_point deadline_;
  bool timed_out_ = false;
  std::size_t explored_ = 0;
  std::vector<std::size_t> best_nodes_;
  double best_value_ = 0.0;
};

}  // namespace

std::uint64_t count_feasible_subsets(const Instance& inst, std::uint64_t cap) {
  std::vector<double> costs(inst.costs);
  std::sort(costs.begin(), costs.end());
  std::uint64_t count = 0;
  // Costs ascending: once an item does not fit, no later one does.
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double remaining) {
    if (count > cap) return;
    ++count;
    for (std::size_t j = i; j < costs.size() && count <= cap; ++j) {
      if (!within_budget(costs[j], remaining)) break;
      rec(j + 1, remaining - costs[j]);
    }
  };
  rec(0, inst.budget);
  return count;
}

SolverReport enumerate_exact(const Instance& inst, const ObjectiveMatrix& p, std::uint64_t limit) {
  const auto t0 = Clock::now();
  if (p.size() != inst.size()) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");
  const std::uint64_t total = count_feasible_subsets(inst, limit);
  if (total > limit) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "more than " + std::to_string(limit) + " feasible selections");
  }

  const double tie_tol = 1e-9 * p.tolerance_scale();
  IncrementalSelection sel(p, inst.costs);
  std::vector<std::size_t> best;
  double best_value = 0.0;
  std::uint64_t visited = 0;

  // Visits every feasible selection once, in lexicographic order of the
  // sorted node lists, so the first optimum found is the smallest one.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    ++visited;
    if (sel.value > best_value + tie_tol) {
      best_value = sel.value;
      best = sel.nodes;
    }
    for (std::size_t j = start; j < p.size(); ++j) {
      if (!within_budget(sel.cost + inst.costs[j], inst.budget)) continue;
      sel.add(j);
      rec(j + 1);
      sel.remove_last();
    }
  };
  rec(0);

  SolverReport r = make_report("exact", inst, FlipSet::from_nodes(p, inst.costs, std::move(best)));
  r.proven_optimal = true;
  r.work = visited;
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Eigen: return "eigen";
    case BoundKind::Gersh: return "gersh";
    case BoundKind::Rowsum: return "rowsum";
    case BoundKind::None: return "none";
  }
  return "none";
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "eigen") return BoundKind::Eigen;
  if (name == "gersh") return BoundKind::Gersh;
  if (name == "rowsum") return BoundKind::Rowsum;
  if (name == "none") return BoundKind::None;
  throw Error(ErrorCode::ParseError, "unknown bound kind '" + name + "'");
}

SolverReport branch_and_bound(const Instance& inst, const ObjectiveMatrix& p, const BranchAndBoundOptions& opts) {
  const auto t0 = Clock::now();
  if (p.size() != inst.size()) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");

  BranchAndBound bb(inst, p, opts);
  if (opts.warm_start) {
    GreedyConfig cfg;
    cfg.iterations = std::max<std::size_t>(1, opts.warm_start_iterations);
    cfg.seed = opts.seed;
    const SolverReport warm = i_greedy(inst, p, cfg);
    if (warm.gain > 0.0) bb.set_incumbent({warm.selection.nodes().begin(), warm.selection.nodes().end()}, warm.gain);
  }
  bb.run();

  SolverReport r = make_report("bnb", inst, FlipSet::from_nodes(p, inst.costs, bb.best_nodes()), opts.seed);
  r.proven_optimal = !bb.timed_out();
  r.status = bb.timed_out() ? "timeout" : "ok";
  r.work = bb.nodes_explored();
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

}  // namespace divmax
