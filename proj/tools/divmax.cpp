#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "divmax/benchmark.hpp"
#include "divmax/bounds.hpp"
#include "divmax/error.hpp"
#include "divmax/exact.hpp"
#include "divmax/generators.hpp"
#include "divmax/glover.hpp"
#include "divmax/greedy.hpp"
#include "divmax/instance_io.hpp"
#include "divmax/profile.hpp"
#include "divmax/sdp.hpp"

using namespace divmax;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kUnsupported = 3, kTimeout = 4 };

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnsupportedCosts:
    case ErrorCode::Infeasible:
    case ErrorCode::Unbounded:
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::SearchSpaceTooLarge:
      return kUnsupported;
    default:
      return kParse;
  }
}

struct InstanceArgs {
  std::string dataset = "karate";
  std::string edges, exposure, costs;
  std::string k = "0.1n";
  std::string k_rounding = "ceil";
  std::string cost_mode = "file";

  void attach(CLI::App* app) {
    app->add_option("--dataset", dataset,
                    "karate | karate-d:SEED | two-community:N:P_IN:P_OUT:SEED | subsetsum:M:m1/m2/...");
    app->add_option("--edges", edges, "edge list file (overrides --dataset)");
    app->add_option("--exposure", exposure, "exposure file, required with --edges");
    app->add_option("--costs", costs, "cost file");
    app->add_option("--k", k, "budget: absolute (5) or fraction of n (0.1n)");
    app->add_option("--k-rounding", k_rounding, "floor | ceil | round");
    app->add_option("--cost-mode", cost_mode, "unit | file");
  }

  LoadedInstance load() const {
    LoadedInstance li;
    if (!edges.empty()) {
      if (exposure.empty()) throw Error(ErrorCode::ParseError, "--edges needs --exposure");
      li = load_instance(edges, exposure, costs.empty() ? std::nullopt : std::optional<std::string>(costs), 0.0);
    } else {
      li = load_dataset(dataset);
    }
    if (cost_mode == "unit") {
      li.instance.costs.assign(li.instance.size(), 1.0);
    } else if (cost_mode != "file") {
      throw Error(ErrorCode::ParseError, "bad --cost-mode '" + cost_mode + "'");
    }
    KRounding rule = parse_k_rounding(k_rounding);
    if (rule == KRounding::Both) throw Error(ErrorCode::ParseError, "--k-rounding both is only available in bench");
    li.instance.budget = resolve_k(parse_k_spec(k), li.instance.size(), rule).front();
    return li;
  }
};

std::string join_ids(std::span<const std::size_t> nodes, const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? " " : "") + ids[nodes[i]];
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exposure-diversity maximization by flipping node exposures under a budget"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
  InstanceArgs solve_inst;
  solve_inst.attach(solve);
  std::string algorithm = "i_greedy";
  std::size_t iterations = 100;
  std::uint64_t seed = 1;
  bool polish = true;
  double time_limit = 60.0;
  std::string bound = "rowsum";
  std::string format = "text";
  solve->add_option("--algorithm,-a", algorithm, "s_greedy | i_greedy | exact | bnb | sdp | glover");
  solve->add_option("--iterations,-I", iterations, "greedy iterations / rounding samples");
  solve->add_option("--seed", seed);
  solve->add_flag("--polish,!--no-polish", polish, "local search after rounding");
  solve->add_option("--time-limit", time_limit, "seconds for bnb (0 disables)");
  solve->add_option("--bound", bound, "bnb pruning bound: eigen | gersh | rowsum | none");
  solve->add_option("--format", format, "text | json");

  // bound
  auto* bnd = app.add_subcommand("bound", "print the three spectral/row-sum upper bounds");
  InstanceArgs bound_inst;
  bound_inst.attach(bnd);

  // gen
  auto* gen = app.add_subcommand("gen", "write generated instance files");
  gen->require_subcommand(1);
  std::string out_prefix = "instance";
  auto* gen_tc = gen->add_subcommand("two-community", "two equal blocks with +1 / -1 exposure");
  std::size_t gen_n = 100;
  double p_in = 0.1, p_out = 0.01;
  std::uint64_t gen_seed = 1;
  gen_tc->add_option("--n", gen_n)->required();
  gen_tc->add_option("--p-in", p_in)->required();
  gen_tc->add_option("--p-out", p_out)->required();
  gen_tc->add_option("--seed", gen_seed);
  gen_tc->add_option("--out", out_prefix, "output prefix")->required();
  auto* gen_ss = gen->add_subcommand("subsetsum", "subset-sum reduction instance");
  std::vector<std::int64_t> items;
  std::int64_t big_m = 1;
  gen_ss->add_option("--items", items, "item sizes")->required()->delimiter(',');
  gen_ss->add_option("--M", big_m, "target sum")->required();
  gen_ss->add_option("--out", out_prefix, "output prefix")->required();
  auto* gen_re = gen->add_subcommand("random-exposure", "resample exposure of a dataset");
  std::string re_dataset = "karate";
  gen_re->add_option("--dataset", re_dataset);
  gen_re->add_option("--seed", gen_seed);
  gen_re->add_option("--out", out_prefix, "output prefix")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "config-driven sweep over datasets, budgets, algorithms and seeds");
  std::string config_path, bench_out;
  std::vector<std::string> overrides;
  bench->add_option("--config,-c", config_path, "flat key = value file");
  bench->add_option("--set", overrides, "key=value override (repeatable)");
  bench->add_option("--out,-o", bench_out, "output file (default stdout)");

  // profile
  auto* prof = app.add_subcommand("profile", "echo chamber, degree and PageRank of the first selected nodes");
  InstanceArgs prof_inst;
  prof_inst.attach(prof);
  std::string prof_alg = "s_greedy";
  std::size_t top = 5;
  prof->add_option("--algorithm,-a", prof_alg, "s_greedy | i_greedy");
  prof->add_option("--top", top, "number of nodes to profile");
  prof->add_option("--seed", seed);

  // export
  auto* exp = app.add_subcommand("export", "write the SDP (SDPA) or linearized LP model");
  InstanceArgs exp_inst;
  exp_inst.attach(exp);
  std::string exp_kind = "sdpa", exp_out;
  exp->add_option("kind", exp_kind, "sdpa | lp")->required();
  exp->add_option("--out,-o", exp_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*solve) {
      const LoadedInstance li = solve_inst.load();
      const Instance& inst = li.instance;
      const ObjectiveMatrix p = build_objective(inst.graph, inst.exposure);
      RoundingOptions ro;
      ro.samples = iterations;
      ro.seed = seed;
      ro.polish = polish;
      ro.polish_iterations = iterations;
      SolverReport rep;
      if (algorithm == "s_greedy") {
        rep = s_greedy(inst, p);
      } else if (algorithm == "i_greedy") {
        rep = i_greedy(inst, p, GreedyConfig{iterations, seed, true});
      } else if (algorithm == "exact") {
        rep = enumerate_exact(inst, p);
      } else if (algorithm == "bnb") {
        BranchAndBoundOptions bo;
        bo.bound = parse_bound_kind(bound);
        bo.time_limit = time_limit;
        bo.seed = seed;
        rep = branch_and_bound(inst, p, bo);
      } else if (algorithm == "sdp") {
        rep = sdp_relax(inst, p, {}, ro);
      } else if (algorithm == "glover") {
        rep = glover_relax(inst, p, ro);
      } else {
        throw Error(ErrorCode::ParseError, "unknown algorithm '" + algorithm + "'");
      }
      const double eta_norm = rep.eta_before / 4.0;
      if (format == "json") {
        nlohmann::ordered_json j;
        j["algorithm"] = rep.algorithm;
        j["n"] = inst.size();
        j["m"] = inst.graph.edge_count();
        j["k"] = inst.budget;
        j["eta_s_norm"] = eta_norm;
        j["gain"] = rep.gain;
        j["value"] = rep.value_normalized;
        j["value_raw"] = rep.value_raw;
        std::vector<std::string> sel;
        for (std::size_t v : rep.selection.nodes()) sel.push_back(li.ids[v]);
        j["selection"] = sel;
        j["relax_gain"] = rep.relaxation_bound ? nlohmann::ordered_json(*rep.relaxation_bound) : nullptr;
        j["relax_bound"] =
            rep.relaxation_bound ? nlohmann::ordered_json(eta_norm + *rep.relaxation_bound) : nullptr;
        j["feasible"] = rep.feasible;
        j["proven"] = rep.proven_optimal;
        j["status"] = rep.status;
        j["work"] = rep.work;
        j["runtime_ms"] = rep.runtime_ms;
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("algorithm   %s\n", rep.algorithm.c_str());
        std::printf("n, m, k     %zu, %zu, %g\n", inst.size(), inst.graph.edge_count(), inst.budget);
        std::printf("eta(s)/4    %.6f\n", eta_norm);
        std::printf("value       %.6f  (gain %.6f)\n", rep.value_normalized, rep.gain);
        if (rep.relaxation_bound) {
          std::printf("relaxation  %.6f  (gain %.6f)\n", eta_norm + *rep.relaxation_bound, *rep.relaxation_bound);
        }
        std::printf("selection   %s\n", join_ids(rep.selection.nodes(), li.ids).c_str());
        std::printf("status      %s%s\n", rep.status.c_str(), rep.proven_optimal ? " (optimal)" : "");
        std::printf("runtime     %.3f ms\n", rep.runtime_ms);
      }
      return rep.status == "timeout" ? kTimeout : kOk;
    }

    if (*bnd) {
      const LoadedInstance li = bound_inst.load();
      const ObjectiveMatrix p = build_objective(li.instance.graph, li.instance.exposure);
      const BoundReport b = compute_bounds(li.instance, p);
      const double eta_norm = diversity_index_normalized(li.instance.graph, li.instance.exposure);
      std::printf("k            %g (cardinality %zu)\n", li.instance.budget, b.cardinality);
      std::printf("lambda_max   %.9f (%zu power iterations%s)\n", b.lambda_max_estimate, b.power_iters_used,
                  b.eigen_converged ? "" : ", not converged");
      std::printf("eigen        %.6f  (normalized %.6f)\n", b.eigen_bound, eta_norm + b.eigen_bound);
      std::printf("gersh        %.6f  (normalized %.6f)\n", b.gersh_bound, eta_norm + b.gersh_bound);
      std::printf("rowsum       %.6f  (normalized %.6f)\n", b.rowsum_bound, eta_norm + b.rowsum_bound);
      return kOk;
    }

    if (*gen) {
      LoadedInstance li;
      if (*gen_tc) {
        li.instance = gen_two_community(gen_n, p_in, p_out, gen_seed);
      } else if (*gen_ss) {
        li.instance = gen_subsetsum(items, big_m);
      } else {
        li.instance = gen_random_exposure(load_dataset(re_dataset).instance, gen_seed);
      }
      li.ids = default_ids(li.instance.size());
      save_instance(out_prefix, li);
      std::printf("wrote %s.{edges,exposure,costs}: n=%zu m=%zu\n", out_prefix.c_str(), li.instance.size(),
                  li.instance.graph.edge_count());
      return kOk;
    }

    if (*bench) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw Error(ErrorCode::IoFailure, "cannot open " + config_path);
        cfg = parse_run_config(f);
      }
      for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--set expects key=value, got '" + o + "'");
        apply_setting(cfg, o.substr(0, eq), o.substr(eq + 1));
      }
      const auto rows = run_benchmark(cfg);
      if (bench_out.empty()) {
        write_report(std::cout, cfg, rows);
      } else {
        std::ofstream f = open_out(bench_out);
        write_report(f, cfg, rows);
      }
      return kOk;
    }

    if (*prof) {
      const LoadedInstance li = prof_inst.load();
      const Instance& inst = li.instance;
      const ObjectiveMatrix p = build_objective(inst.graph, inst.exposure);
      const SolverReport rep =
          prof_alg == "i_greedy" ? i_greedy(inst, p, GreedyConfig{iterations, seed, true}) : s_greedy(inst, p);
      std::vector<std::size_t> order(rep.selection.nodes().begin(), rep.selection.nodes().end());
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare_ratio(p.diagonal(a), inst.costs[a], p.diagonal(b), inst.costs[b]) > 0;
      });
      if (order.size() > top) order.resize(top);
      std::printf("%-10s %6s %6s %6s %6s %12s %6s\n", "node", "echo", "rank", "degree", "rank", "pagerank", "rank");
      for (const NodeProfile& np : node_profile(inst, order)) {
        std::printf("%-10s %6zu %6zu %6zu %6zu %12.6f %6zu\n", li.ids[np.node].c_str(), np.echo_chamber, np.echo_rank,
                    np.degree, np.degree_rank, np.pagerank, np.pagerank_rank);
      }
      return kOk;
    }

    if (*exp) {
      const LoadedInstance li = exp_inst.load();
      const ObjectiveMatrix p = build_objective(li.instance.graph, li.instance.exposure);
      std::ofstream f = open_out(exp_out);
      if (exp_kind == "sdpa") {
        export_sdpa(make_sdp_problem(li.instance, p), f);
      } else if (exp_kind == "lp") {
        export_lp(build_glover_lp(li.instance, p), f);
      } else {
        throw Error(ErrorCode::ParseError, "unknown export kind '" + exp_kind + "'");
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kOk;
}
