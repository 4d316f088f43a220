#include "divmax/glover.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "divmax/error.hpp"
#include "divmax/greedy.hpp"
#include "divmax/rng.hpp"

namespace divmax {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

GloverBounds compute_LU(const ObjectiveMatrix& p) {
  const std::size_t n = p.size();
  GloverBounds lu{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    auto add = [&](double v) { (v > 0.0 ? lu.upper[i] : lu.lower[i]) += v; };
    add(p.diagonal(i));
    for (const Neighbor& e : p.row(i)) add(e.weight);
  }
  return lu;
}

LinearProgram build_glover_lp(const Instance& inst, const ObjectiveMatrix& p) {
  const std::size_t n = inst.size();
  if (p.size() != n) throw Error(ErrorCode::LengthMismatch, "objective and instance sizes differ");
  const GloverBounds lu = compute_LU(p);

  LinearProgram lp;
  for (std::size_t i = 0; i < n; ++i) lp.add_variable("x" + std::to_string(i + 1), 0.0, 0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) lp.add_variable("z" + std::to_string(i + 1), 1.0, -kInfinity, kInfinity);
  auto z = [n](std::size_t i) { return n + i; };

  LpRow budget{"budget", {}, RowSense::LessEqual, inst.budget};
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.costs[i] != 0.0) budget.coeffs.emplace_back(i, inst.costs[i]);
  }
  lp.rows.push_back(std::move(budget));

  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = std::to_string(i + 1);
    const double L = lu.lower[i], U = lu.upper[i];
    lp.rows.push_back({"lo" + id, {{i, L}, {z(i), -1.0}}, RowSense::LessEqual, 0.0});
    lp.rows.push_back({"up" + id, {{z(i), 1.0}, {i, -U}}, RowSense::LessEqual, 0.0});

    // sum_j P_ij x_j with the diagonal folded into column i
    std::vector<std::pair<std::size_t, double>> px;
    bool diag_done = false;
    for (const Neighbor& e : p.row(i)) {
      if (!diag_done && e.node > i) {
        px.emplace_back(i, p.diagonal(i));
        diag_done = true;
      }
      px.emplace_back(e.node, e.weight);
    }
    if (!diag_done) px.emplace_back(i, p.diagonal(i));

    LpRow rl{"rl" + id, {}, RowSense::LessEqual, U};
    LpRow ru{"ru" + id, {}, RowSense::LessEqual, -L};
    for (const auto& [j, a] : px) {
      const double extra_l = j == i ? U : 0.0;
      const double extra_u = j == i ? L : 0.0;
      rl.coeffs.emplace_back(j, a + extra_l);
      ru.coeffs.emplace_back(j, -a - extra_u);
    }
    rl.coeffs.emplace_back(z(i), -1.0);
    ru.coeffs.emplace_back(z(i), 1.0);
    lp.rows.push_back(std::move(rl));
    lp.rows.push_back(std::move(ru));
  }
  return lp;
}

GloverRelaxation solve_glover_relaxation(const Instance& inst, const ObjectiveMatrix& p, std::size_t max_structural) {
  if (2 * inst.size() > max_structural) {
    throw Error(ErrorCode::DimensionTooLarge, std::to_string(2 * inst.size()) + " structural variables exceed " +
                                                  std::to_string(max_structural));
  }
  const LinearProgram lp = build_glover_lp(inst, p);
  const LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Unbounded) throw Error(ErrorCode::Unbounded, "linearized relaxation is unbounded");
  if (res.status == LpStatus::Infeasible) throw Error(ErrorCode::Infeasible, "linearized relaxation is infeasible");
  if (res.status == LpStatus::IterationLimit) throw Error(ErrorCode::InvalidValue, "simplex pivot limit reached");
  GloverRelaxation out;
  out.x.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(inst.size()));
  for (double& v : out.x) v = std::clamp(v, 0.0, 1.0);
  out.value = res.value;
  out.pivots = res.pivots;
  return out;
}

SolverReport round_lp(std::span<const double> x_frac, const Instance& inst, const ObjectiveMatrix& p,
                      const RoundingOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (x_frac.size() != inst.size() || p.size() != inst.size()) {
    throw Error(ErrorCode::LengthMismatch, "fractional solution and instance sizes differ");
  }
  std::vector<double> prob(x_frac.begin(), x_frac.end());
  for (double& v : prob) v = std::clamp(v, 0.0, 1.0);

  const Rng root(opts.seed);
  FlipSet best = FlipSet::from_nodes(p, inst.costs, {});
  for (std::size_t s = 0; s < std::max<std::size_t>(1, opts.samples); ++s) {
    Rng rng = root.split(s);
    FlipSet cand = FlipSet::from_nodes(p, inst.costs, bernoulli_round(prob, inst, p, rng, opts.attempts_cap));
    if (s == 0 || cand.value() > best.value()) best = std::move(cand);
  }
  if (opts.polish) {
    GreedyConfig cfg;
    cfg.iterations = std::max<std::size_t>(1, opts.polish_iterations);
    cfg.seed = opts.seed;
    SolverReport polished = i_greedy_from(inst, p, cfg, best);
    if (polished.selection.value() > best.value()) best = polished.selection;
  }
  SolverReport rep = make_report("glover", inst, std::move(best), opts.seed);
  rep.work = opts.samples;
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

SolverReport glover_relax(const Instance& inst, const ObjectiveMatrix& p, const RoundingOptions& opts,
                          std::size_t max_structural) {
  const auto t0 = std::chrono::steady_clock::now();
  const GloverRelaxation relax = solve_glover_relaxation(inst, p, max_structural);
  SolverReport rep = round_lp(relax.x, inst, p, opts);
  rep.relaxation_bound = relax.value;
  rep.work = relax.pivots;
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace divmax
