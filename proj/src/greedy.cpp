#include "divmax/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <vector>

#include "divmax/error.hpp"
#include "divmax/rng.hpp"

namespace divmax {

namespace {

// 2: +inf ratio, 1: finite, 0: -inf
int ratio_class(double gain, double cost) {
  if (cost > 0.0) return 1;
  if (gain > 0.0) return 2;
  if (gain < 0.0) return 0;
  return 1;
}

// Incremental state for the fill / remove loop. gain_[j] is the marginal
// gain of adding j when j is not selected and the loss of removing it when it
// is: P_jj + 2 sum_{i in x, i != j} P_ij in both cases.
class GreedyState {
 public:
  GreedyState(const ObjectiveMatrix& p, std::span<const double> costs)
      : p_(p), costs_(costs), selected_(p.size(), 0), gain_(p.diagonal().begin(), p.diagonal().end()) {}

  void add(std::size_t j) {
    value_ += gain_[j];
    cost_ += costs_[j];
    selected_[j] = 1;
    members_.insert(std::lower_bound(members_.begin(), members_.end(), j), j);
    for (const Neighbor& e : p_.row(j)) gain_[e.node] += 2.0 * e.weight;
  }

  void remove(std::size_t j) {
    value_ -= gain_[j];
    cost_ -= costs_[j];
    selected_[j] = 0;
    members_.erase(std::lower_bound(members_.begin(), members_.end(), j));
    for (const Neighbor& e : p_.row(j)) gain_[e.node] -= 2.0 * e.weight;
  }

  /// Best affordable unselected node, or n when none fits.
  std::size_t best_candidate(double budget) const {
    const std::size_t n = p_.size();
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (selected_[j] || !within_budget(cost_ + costs_[j], budget)) continue;
      if (best == n || compare_ratio(gain_[j], costs_[j], gain_[best], costs_[best]) > 0) best = j;
    }
    return best;
  }

  double value() const { return value_; }
  const std::vector<std::size_t>& members() const { return members_; }

 private:
  const ObjectiveMatrix& p_;
  std::span<const double> costs_;
  std::vector<char> selected_;
  std::vector<double> gain_;
  std::vector<std::size_t> members_;
  double value_ = 0.0;
  double cost_ = 0.0;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

SolverReport run_i_greedy(const Instance& inst, const ObjectiveMatrix& p, const GreedyConfig& cfg,
                          const FlipSet* start) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.iterations == 0) throw Error(ErrorCode::InvalidValue, "i_greedy needs at least one iteration");
  if (p.size() != inst.size()) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");

  GreedyState state(p, inst.costs);
  std::vector<std::size_t> best_nodes;
  double best_value = 0.0;
  if (start != nullptr) {
    if (!within_budget(start->cost(), inst.budget)) throw Error(ErrorCode::InvalidValue, "start selection is infeasible");
    for (std::size_t j : start->nodes()) state.add(j);
    if (state.value() > best_value) {
      best_value = state.value();
      best_nodes = state.members();
    }
  }

  const Rng root(cfg.seed);
  std::size_t steps = 0;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    for (std::size_t j = state.best_candidate(inst.budget); j < p.size(); j = state.best_candidate(inst.budget)) {
      state.add(j);
      ++steps;
      if (cfg.track_prefix && state.value() > best_value) {
        best_value = state.value();
        best_nodes = state.members();
      }
    }
    if (state.value() > best_value) {
      best_value = state.value();
      best_nodes = state.members();
    }
    if (state.members().empty()) break;
    Rng stream = root.split(it);
    state.remove(state.members()[stream.uniform_index(state.members().size())]);
  }

  SolverReport r = make_report("i_greedy", inst, FlipSet::from_nodes(p, inst.costs, std::move(best_nodes)), cfg.seed);
  r.work = steps;
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

}  // namespace

int compare_ratio(double gain_a, double cost_a, double gain_b, double cost_b) {
  const int ca = ratio_class(gain_a, cost_a);
  const int cb = ratio_class(gain_b, cost_b);
  if (ca != cb) return ca > cb ? 1 : -1;
  double lhs = gain_a;
  double rhs = gain_b;
  if (ca == 1) {
    lhs = gain_a * (cost_b > 0.0 ? cost_b : 1.0);
    rhs = gain_b * (cost_a > 0.0 ? cost_a : 1.0);
  }
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

SolverReport s_greedy(const Instance& inst, const ObjectiveMatrix& p) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = p.size();
  if (n != inst.size()) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_ratio(p.diagonal(a), inst.costs[a], p.diagonal(b), inst.costs[b]) > 0;
  });

  std::vector<std::size_t> chosen;
  double cost = 0.0;
  for (std::size_t j : order) {
    if (within_budget(cost + inst.costs[j], inst.budget)) {
      chosen.push_back(j);
      cost += inst.costs[j];
    }
  }
  SolverReport r = make_report("s_greedy", inst, FlipSet::from_nodes(p, inst.costs, std::move(chosen)));
  r.work = n;
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

SolverReport i_greedy(const Instance& inst, const ObjectiveMatrix& p, const GreedyConfig& cfg) {
  return run_i_greedy(inst, p, cfg, nullptr);
}

SolverReport i_greedy_from(const Instance& inst, const ObjectiveMatrix& p, const GreedyConfig& cfg,
                           const FlipSet& start) {
  return run_i_greedy(inst, p, cfg, &start);
}

}  // namespace divmax
