#include "divmax/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "divmax/bounds.hpp"
#include "divmax/datasets.hpp"
#include "divmax/error.hpp"
#include "divmax/generators.hpp"
#include "divmax/glover.hpp"
#include "divmax/greedy.hpp"
#include "divmax/sdp.hpp"

namespace divmax {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (std::string& t : split(s, ',')) {
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

Error bad_value(const std::string& key, const std::string& value) {
  return Error(ErrorCode::ParseError, "bad value '" + value + "' for " + key);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw bad_value(key, v);
    return d;
  } catch (const std::logic_error&) {
    throw bad_value(key, v);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw bad_value(key, v);
  try {
    return std::stoull(v);
  } catch (const std::logic_error&) {
    throw bad_value(key, v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw bad_value(key, v);
}

const std::vector<std::string> kAlgorithms = {"s_greedy", "i_greedy", "exact", "bnb", "sdp", "glover"};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* to_string(KRounding r) {
  switch (r) {
    case KRounding::Floor: return "floor";
    case KRounding::Ceil: return "ceil";
    case KRounding::Round: return "round";
    case KRounding::Both: return "both";
  }
  return "floor";
}

KRounding parse_k_rounding(const std::string& s) {
  if (s == "floor") return KRounding::Floor;
  if (s == "ceil") return KRounding::Ceil;
  if (s == "round") return KRounding::Round;
  if (s == "both") return KRounding::Both;
  throw bad_value("k_rounding", s);
}

KSpec parse_k_spec(const std::string& raw) {
  const std::string s = trim(raw);
  KSpec k;
  k.text = s;
  if (!s.empty() && s.back() == 'n') {
    k.fraction_of_n = true;
    const std::string num = s.substr(0, s.size() - 1);
    k.value = num.empty() ? 1.0 : to_double("k", num);
  } else {
    k.value = to_double("k", s);
  }
  if (!(k.value >= 0.0) || !std::isfinite(k.value)) throw bad_value("k", s);
  return k;
}

std::vector<double> resolve_k(const KSpec& spec, std::size_t n, KRounding rule) {
  if (!spec.fraction_of_n) return {spec.value};
  const double raw = spec.value * static_cast<double>(n);
  // Guards products such as 0.3 * 10 = 3.0000000000000004 against ceil.
  const double snapped = std::abs(raw - std::round(raw)) < 1e-9 ? std::round(raw) : raw;
  auto clamp = [n](double v) { return std::clamp(v, 0.0, static_cast<double>(n)); };
  switch (rule) {
    case KRounding::Floor: return {clamp(std::floor(snapped))};
    case KRounding::Ceil: return {clamp(std::ceil(snapped))};
    case KRounding::Round: return {clamp(std::round(snapped))};
    case KRounding::Both: {
      const double lo = clamp(std::floor(snapped)), hi = clamp(std::ceil(snapped));
      return lo == hi ? std::vector<double>{lo} : std::vector<double>{lo, hi};
    }
  }
  return {};
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Markdown: return "markdown";
  }
  return "csv";
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "markdown" || s == "md") return OutputFormat::Markdown;
  throw bad_value("format", s);
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(raw_value);
  if (key == "datasets" || key == "dataset") {
    cfg.datasets = split_list(v);
  } else if (key == "algorithms" || key == "algorithm") {
    cfg.algorithms = split_list(v);
    for (const std::string& a : cfg.algorithms) {
      if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end()) throw bad_value(key, a);
    }
  } else if (key == "k") {
    cfg.ks.clear();
    for (const std::string& s : split_list(v)) cfg.ks.push_back(parse_k_spec(s));
  } else if (key == "k_rounding") {
    cfg.k_rounding = parse_k_rounding(v);
  } else if (key == "cost_mode") {
    if (v != "unit" && v != "file") throw bad_value(key, v);
    cfg.cost_mode = v;
  } else if (key == "iterations") {
    cfg.iterations = to_u64(key, v);
    if (cfg.iterations == 0) throw bad_value(key, v);
  } else if (key == "seeds" || key == "seed") {
    cfg.seeds.clear();
    for (const std::string& s : split_list(v)) cfg.seeds.push_back(to_u64(key, s));
  } else if (key == "polish") {
    cfg.polish = to_bool(key, v);
  } else if (key == "format") {
    cfg.format = parse_output_format(v);
  } else if (key == "time_limit") {
    cfg.time_limit = to_double(key, v);
  } else if (key == "bound") {
    cfg.bound = parse_bound_kind(v);
  } else if (key == "compute_bounds") {
    cfg.compute_bounds = to_bool(key, v);
  } else if (key == "include_timing") {
    cfg.include_timing = to_bool(key, v);
  } else if (key == "enumeration_limit") {
    cfg.enumeration_limit = to_u64(key, v);
  } else {
    throw Error(ErrorCode::ParseError, "unknown setting '" + raw_key + "'");
  }
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

LoadedInstance load_dataset(const std::string& spec) {
  const std::vector<std::string> f = split(spec, ':');
  const std::string& kind = f.at(0);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (f.size() < lo || f.size() > hi) throw Error(ErrorCode::ParseError, "malformed dataset spec '" + spec + "'");
  };
  LoadedInstance li;
  if (kind == "karate") {
    need(1, 1);
    li.instance = karate_instance(0.0);
  } else if (kind == "karate-d") {
    need(2, 2);
    li.instance = gen_random_exposure(karate_instance(0.0), to_u64("seed", f[1]));
  } else if (kind == "two-community") {
    need(5, 5);
    li.instance = gen_two_community(to_u64("n", f[1]), to_double("p_in", f[2]), to_double("p_out", f[3]),
                                    to_u64("seed", f[4]));
  } else if (kind == "subsetsum") {
    need(3, 3);
    std::vector<std::int64_t> items;
    for (const std::string& s : split(f[2], '/')) items.push_back(static_cast<std::int64_t>(to_u64("item", s)));
    li.instance = gen_subsetsum(items, static_cast<std::int64_t>(to_u64("M", f[1])));
  } else if (kind == "files") {
    need(3, 4);
    return load_instance(f[1], f[2], f.size() == 4 ? std::optional<std::string>(f[3]) : std::nullopt, 0.0);
  } else {
    throw Error(ErrorCode::ParseError, "unknown dataset kind '" + kind + "'");
  }
  li.ids = default_ids(li.instance.size());
  return li;
}

std::vector<BenchRow> run_benchmark(const RunConfig& cfg) {
  std::vector<BenchRow> rows;
  if (cfg.algorithms.empty()) return rows;

  for (const std::string& ds : cfg.datasets) {
    LoadedInstance li = load_dataset(ds);
    Instance inst = std::move(li.instance);
    if (cfg.cost_mode == "unit") inst.costs.assign(inst.size(), 1.0);
    const ObjectiveMatrix p = build_objective(inst.graph, inst.exposure);
    const double eta_norm = diversity_index_normalized(inst.graph, inst.exposure);
    const double tol = 1e-9 * inst.graph.tolerance_scale();

    std::vector<double> ks;
    for (const KSpec& spec : cfg.ks) {
      for (double k : resolve_k(spec, inst.size(), cfg.k_rounding)) {
        if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
      }
    }

    for (double k : ks) {
      inst.budget = k;
      std::optional<BoundReport> bounds;
      if (cfg.compute_bounds && has_unit_class_costs(inst)) bounds = compute_bounds(inst, p);
      std::optional<SdpSolution> sdp_cache;
      std::optional<GloverRelaxation> lp_cache;
      std::string sdp_error, lp_error;

      for (const std::string& alg : cfg.algorithms) {
        for (std::uint64_t seed : cfg.seeds) {
          BenchRow row;
          row.dataset = ds;
          row.n = inst.size();
          row.m = inst.graph.edge_count();
          row.k = k;
          row.algorithm = alg;
          row.seed = seed;
          row.eta_norm = eta_norm;
          if (bounds) {
            row.eigen_bound = bounds->eigen_bound;
            row.gersh_bound = bounds->gersh_bound;
            row.rowsum_bound = bounds->rowsum_bound;
          }
          RoundingOptions ro;
          ro.samples = cfg.iterations;
          ro.seed = seed;
          ro.polish = cfg.polish;
          ro.polish_iterations = cfg.iterations;

          const auto t0 = std::chrono::steady_clock::now();
          try {
            SolverReport rep;
            if (alg == "s_greedy") {
              rep = s_greedy(inst, p);
            } else if (alg == "i_greedy") {
              GreedyConfig gc;
              gc.iterations = cfg.iterations;
              gc.seed = seed;
              rep = i_greedy(inst, p, gc);
            } else if (alg == "exact") {
              rep = enumerate_exact(inst, p, cfg.enumeration_limit);
            } else if (alg == "bnb") {
              BranchAndBoundOptions bo;
              bo.bound = cfg.bound;
              bo.time_limit = cfg.time_limit;
              bo.seed = seed;
              rep = branch_and_bound(inst, p, bo);
            } else if (alg == "sdp") {
              if (!sdp_cache) sdp_cache = solve_sdp_relaxation(make_sdp_problem(inst, p));
              rep = gaussian_round(*sdp_cache, inst, p, ro);
              rep.relaxation_bound = sdp_cache->objective_value;
              if (!sdp_cache->converged) rep.status = "nonconvergence";
            } else if (alg == "glover") {
              if (!lp_cache) lp_cache = solve_glover_relaxation(inst, p);
              rep = round_lp(lp_cache->x, inst, p, ro);
              rep.relaxation_bound = lp_cache->value;
            } else {
              throw Error(ErrorCode::ParseError, "unknown algorithm '" + alg + "'");
            }
            row.gain = rep.gain;
            row.value = rep.value_normalized;
            if (rep.relaxation_bound) {
              row.relax_gain = *rep.relaxation_bound;
              row.relax_bound = eta_norm + *rep.relaxation_bound;
            }
            row.feasible = rep.feasible;
            row.proven = rep.proven_optimal;
            row.status = rep.status;
            row.selection.assign(rep.selection.nodes().begin(), rep.selection.nodes().end());

            const double check =
                diversity_index_normalized(inst.graph, apply_flips(inst.exposure, rep.selection));
            if (std::abs(check - rep.value_normalized) > tol) row.status = "inconsistent";
          } catch (const Error& e) {
            row.status = std::string(to_string(e.code()));
          }
          row.runtime_ms = elapsed_ms(t0);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

namespace {

const std::vector<std::string>& columns(bool timing) {
  static const std::vector<std::string> base = {
      "dataset", "n",     "m",     "k",      "algorithm",   "seed",  "eta_s_norm", "gain",
      "value",   "relax_bound", "relax_gain", "eigen_gain", "gersh_gain", "rowsum_gain", "feasible", "proven",
      "status"};
  static const std::vector<std::string> with_time = [] {
    auto v = base;
    v.push_back("runtime_ms");
    return v;
  }();
  return timing ? with_time : base;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string opt6(const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); }

std::string k_text(double k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", k);
  return buf;
}

std::vector<std::string> cells(const BenchRow& r, bool timing) {
  std::vector<std::string> c = {r.dataset,
                                std::to_string(r.n),
                                std::to_string(r.m),
                                k_text(r.k),
                                r.algorithm,
                                std::to_string(r.seed),
                                fixed6(r.eta_norm),
                                opt6(r.gain),
                                opt6(r.value),
                                opt6(r.relax_bound),
                                opt6(r.relax_gain),
                                opt6(r.eigen_bound),
                                opt6(r.gersh_bound),
                                opt6(r.rowsum_bound),
                                r.feasible ? "true" : "false",
                                r.proven ? "true" : "false",
                                r.status};
  if (timing) c.push_back(fixed6(r.runtime_ms));
  return c;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows) {
  out << "# k_rounding=" << to_string(cfg.k_rounding) << " cost_mode=" << cfg.cost_mode << "\n";
  const auto& cols = columns(cfg.include_timing);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const BenchRow& r : rows) {
    const auto c = cells(r, cfg.include_timing);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << csv_escape(c[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["k_rounding"] = to_string(cfg.k_rounding);
  doc["cost_mode"] = cfg.cost_mode;
  doc["rows"] = ordered_json::array();
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  for (const BenchRow& r : rows) {
    ordered_json j;
    j["dataset"] = r.dataset;
    j["n"] = r.n;
    j["m"] = r.m;
    j["k"] = r.k;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["eta_s_norm"] = r.eta_norm;
    j["gain"] = opt(r.gain);
    j["value"] = opt(r.value);
    j["relax_bound"] = opt(r.relax_bound);
    j["relax_gain"] = opt(r.relax_gain);
    j["eigen_gain"] = opt(r.eigen_bound);
    j["gersh_gain"] = opt(r.gersh_bound);
    j["rowsum_gain"] = opt(r.rowsum_bound);
    j["feasible"] = r.feasible;
    j["proven"] = r.proven;
    j["status"] = r.status;
    if (cfg.include_timing) j["runtime_ms"] = r.runtime_ms;
    j["selection"] = r.selection;
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << "\n";
}

void write_markdown(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows) {
  out << "k rounding: " << to_string(cfg.k_rounding) << ", cost mode: " << cfg.cost_mode << "\n\n";
  const auto& cols = columns(cfg.include_timing);
  out << "|";
  for (const auto& c : cols) out << ' ' << c << " |";
  out << "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
  out << "\n";
  for (const BenchRow& r : rows) {
    out << "|";
    for (const auto& c : cells(r, cfg.include_timing)) out << ' ' << c << " |";
    out << "\n";
  }
}

void write_report(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows) {
  switch (cfg.format) {
    case OutputFormat::Csv: write_csv(out, cfg, rows); break;
    case OutputFormat::Json: write_json(out, cfg, rows); break;
    case OutputFormat::Markdown: write_markdown(out, cfg, rows); break;
  }
}

}  // namespace divmax
