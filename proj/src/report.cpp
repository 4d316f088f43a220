#include "divmax/report.hpp"

#include <algorithm>
#include <utility>

namespace divmax {

bool within_budget(double cost, double budget) { return cost <= budget + 1e-9 * std::max(1.0, budget); }

SolverReport make_report(std::string algorithm, const Instance& inst, FlipSet selection, std::uint64_t seed) {
  SolverReport r;
  r.algorithm = std::move(algorithm);
  r.gain = selection.value();
  r.eta_before = diversity_index(inst.graph, inst.exposure);
  r.value_raw = r.eta_before + 4.0 * r.gain;
  r.value_normalized = r.eta_before / 4.0 + r.gain;
  r.feasible = within_budget(selection.cost(), inst.budget);
  r.seed = seed;
  r.selection = std::move(selection);
  return r;
}

}  // namespace divmax
