#include "divmax/rounding.hpp"

#include <algorithm>

#include "divmax/greedy.hpp"
#include "divmax/report.hpp"

namespace divmax {

std::vector<std::size_t> repair_to_budget(const Instance& inst, const ObjectiveMatrix& p,
                                          std::vector<std::size_t> nodes) {
  double cost = 0.0;
  for (std::size_t j : nodes) cost += inst.costs[j];
  if (within_budget(cost, inst.budget)) return nodes;

  std::vector<std::size_t> order = nodes;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare_ratio(p.diagonal(a), inst.costs[a], p.diagonal(b), inst.costs[b]);
    return c != 0 ? c < 0 : a > b;
  });
  std::vector<char> dropped(p.size(), 0);
  for (std::size_t j : order) {
    if (within_budget(cost, inst.budget)) break;
    dropped[j] = 1;
    cost -= inst.costs[j];
  }
  std::erase_if(nodes, [&](std::size_t j) { return dropped[j] != 0; });
  return nodes;
}

std::vector<std::size_t> bernoulli_round(std::span<const double> prob, const Instance& inst,
                                         const ObjectiveMatrix& p, Rng& rng, std::size_t attempts_cap) {
  std::vector<std::size_t> nodes;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, attempts_cap); ++attempt) {
    nodes.clear();
    double cost = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      if (rng.bernoulli(prob[i])) {
        nodes.push_back(i);
        cost += inst.costs[i];
      }
    }
    if (within_budget(cost, inst.budget)) return nodes;
  }
  return repair_to_budget(inst, p, std::move(nodes));
}

}  // namespace divmax
