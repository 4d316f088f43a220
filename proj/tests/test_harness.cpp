#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "divmax/benchmark.hpp"
#include "divmax/datasets.hpp"
#include "divmax/error.hpp"
#include "divmax/generators.hpp"
#include "divmax/instance_io.hpp"
#include "divmax/profile.hpp"

using namespace divmax;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidValue;
}

LoadedInstance read_strings(const std::string& edges, const std::string& exposure, double budget = 1) {
  std::istringstream e(edges), x(exposure);
  return read_instance(e, x, nullptr, budget);
}

std::set<std::pair<std::size_t, std::size_t>> edge_set(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const Edge& e : g.edges()) out.insert({e.u, e.v});
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("divmax_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DIVMAX_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("loader contract") {
  const LoadedInstance li = read_strings("# comment\n\na b 2.5\n", "a 1\nb -1\n");
  CHECK(li.instance.size() == 2);
  CHECK(li.ids == std::vector<std::string>{"a", "b"});
  REQUIRE(li.instance.graph.edge_count() == 1);
  CHECK(li.instance.graph.edges()[0].weight == 2.5);
  CHECK(li.instance.costs == std::vector<double>{1, 1});

  std::istringstream e("x y\ny z 3\n"), x("z -1\nx 1\ny 1\n"), c("y 2.5\n");
  const LoadedInstance lc = read_instance(e, x, &c, 4);
  CHECK(lc.ids == std::vector<std::string>{"x", "y", "z"});
  CHECK(lc.instance.costs == std::vector<double>{1, 2.5, 1});
  CHECK(lc.instance.exposure == ExposureVector({1, 1, -1}));

  CHECK(code_of([] { read_strings("a b\n", "a 1\nb 0.3\n"); }) == ErrorCode::NonBinaryExposure);
  CHECK(code_of([] { read_strings("a b\n", "a 1\nb 1\nc 1\n"); }) == ErrorCode::UnknownNodeInExposure);
  CHECK(code_of([] { read_strings("a b\n", "a 1\n"); }) == ErrorCode::ParseError);
  try {
    read_strings("a b\nc d x\n", "a 1\nb 1\nc 1\nd 1\n");
    FAIL("expected ParseError");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ParseError);
    CHECK(std::string(err.what()).find("line 2") != std::string::npos);
  }
  CHECK(code_of([] { load_instance("/nonexistent/e", "/nonexistent/x", std::nullopt, 1); }) == ErrorCode::IoFailure);
}

TEST_CASE("save and reload round trip") {
  const auto dir = scratch_dir("io");
  LoadedInstance li{gen_two_community(30, 0.4, 0.1, 3, 5), default_ids(30)};
  li.instance.costs[4] = 2.5;
  save_instance((dir / "tc").string(), li);
  const LoadedInstance back =
      load_instance((dir / "tc.edges").string(), (dir / "tc.exposure").string(), (dir / "tc.costs").string(), 5);
  CHECK(back.instance.exposure.size() == 30);
  CHECK(back.instance.graph.edge_count() == li.instance.graph.edge_count());
  // ids may be renumbered by first appearance; compare through them
  for (std::size_t i = 0; i < back.ids.size(); ++i) {
    const auto orig = static_cast<std::size_t>(std::stoul(back.ids[i]));
    CHECK(back.instance.exposure[i] == li.instance.exposure[orig]);
    CHECK(back.instance.costs[i] == li.instance.costs[orig]);
  }
  CHECK(diversity_index(back.instance.graph, back.instance.exposure) ==
        diversity_index(li.instance.graph, li.instance.exposure));
  std::filesystem::remove_all(dir);
}

TEST_CASE("karate fixture through the loader") {
  const LoadedInstance li = load_dataset("karate");
  CHECK(li.instance.size() == 34);
  CHECK(li.instance.graph.edge_count() == 78);
  CHECK(diversity_index_normalized(li.instance.graph, li.instance.exposure) == 10.0);
}

TEST_CASE("two-community generator") {
  const Instance a = gen_two_community(4, 1, 0, 1);
  CHECK(a.graph.edge_count() == 2);
  CHECK(diversity_index_normalized(a.graph, a.exposure) == 0.0);
  const Instance b = gen_two_community(4, 1, 1, 1);
  CHECK(b.graph.edge_count() == 6);
  CHECK(diversity_index_normalized(b.graph, b.exposure) == 4.0);
  CHECK(b.exposure == ExposureVector({1, 1, -1, -1}));

  const Instance c1 = gen_two_community(200, 0.1, 0.02, 9);
  const Instance c2 = gen_two_community(200, 0.1, 0.02, 9);
  const Instance c3 = gen_two_community(200, 0.1, 0.02, 10);
  CHECK(edge_set(c1.graph) == edge_set(c2.graph));
  CHECK(edge_set(c1.graph) != edge_set(c3.graph));

  // 2 * C(100, 2) intra pairs at 0.1, 100^2 cross pairs at 0.02
  double total = 0, cross = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance g = gen_two_community(200, 0.1, 0.02, seed);
    total += static_cast<double>(g.graph.edge_count());
    cross += diversity_index_normalized(g.graph, g.exposure);
  }
  CHECK(total / 20 == doctest::Approx(990 + 200).epsilon(0.03));
  CHECK(cross / 20 == doctest::Approx(200).epsilon(0.05));

  CHECK(code_of([] { gen_two_community(4, 0.2, 0.5, 1); }) == ErrorCode::InvalidProbability);
  CHECK(code_of([] { gen_two_community(4, 1.5, 0.5, 1); }) == ErrorCode::InvalidProbability);
  CHECK(code_of([] { gen_two_community(5, 0.5, 0.5, 1); }) == ErrorCode::InvalidValue);
}

TEST_CASE("random exposure generator") {
  const Instance k = karate_instance(3);
  const Instance d1 = gen_random_exposure(k, 1);
  CHECK(d1.size() == 34);
  CHECK(d1.graph.edge_count() == 78);
  CHECK(d1.exposure == gen_random_exposure(k, 1).exposure);
  CHECK(d1.exposure != gen_random_exposure(k, 2).exposure);
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Instance d = gen_random_exposure(k, seed);
    sum += diversity_index_normalized(d.graph, d.exposure);
  }
  CHECK(sum / 1000 == doctest::Approx(39).epsilon(0.1));
}

TEST_CASE("subset-sum generator") {
  const Instance a = gen_subsetsum({1, 2}, 3);
  CHECK(a.size() == 4);
  CHECK(a.costs == std::vector<double>{0, 1, 2, 4});
  CHECK(a.budget == 3);
  const Eigen::MatrixXd P = oracle::dense_objective(4, {a.graph.edges().begin(), a.graph.edges().end()},
                                                    std::vector<int>(4, 1));
  CHECK(P(0, 0) == 1 - 3);
  CHECK(oracle::brute_force(P, a.costs, a.budget).value == 1.0);
  const Instance b = gen_subsetsum({1, 2}, 4);
  const Eigen::MatrixXd Pb = oracle::dense_objective(4, {b.graph.edges().begin(), b.graph.edges().end()},
                                                     std::vector<int>(4, 1));
  CHECK(oracle::brute_force(Pb, b.costs, b.budget).value == 0.0);
  CHECK(code_of([] { gen_subsetsum({1, 0}, 3); }) == ErrorCode::NonPositiveInput);
  CHECK(code_of([] { gen_subsetsum({1, 2}, -1); }) == ErrorCode::NonPositiveInput);
}

TEST_CASE("node_profile examples") {
  const Instance t = make_unit_cost_instance(build_graph(std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}),
                                             ExposureVector({1, 1, -1}), 1);
  const auto pt = node_profile(t, std::vector<std::size_t>{0});
  REQUIRE(pt.size() == 1);
  CHECK(pt[0].echo_chamber == 1);
  CHECK(pt[0].degree == 2);

  const Instance star = make_unit_cost_instance(build_graph(std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}),
                                                ExposureVector::constant(4), 1);
  const auto ps = node_profile(star, std::vector<std::size_t>{0, 2});
  CHECK(ps[0].echo_chamber == 3);
  CHECK(ps[0].degree == 3);
  CHECK(ps[0].degree_rank == 1);
  CHECK(ps[0].pagerank_rank == 1);
  CHECK(ps[1].degree_rank == 2);  // three-way tie behind the centre
  CHECK(ps[1].node == 2);
}

TEST_CASE("PageRank normalization and reference values") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 30; ++t) {
    const auto ri = oracle::random_instance(gen, 5 + t, 0.15, false, 1);
    const Graph g = ri.instance().graph;
    const auto pr = pagerank(g);
    CHECK(std::accumulate(pr.begin(), pr.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-8));
    for (double v : pr) CHECK(v > 0.0);
  }
  // star K1,3 closed form: centre c = 0.15/4 + 0.85 * 3 l, leaf l = 0.15/4 + 0.85 c / 3
  const Graph star = build_graph(std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  const auto pr = pagerank(star);
  const double leaf = (0.0375 + 0.85 * 0.0375 / 3) / (1 - 0.85 * 0.85);
  CHECK(pr[1] == doctest::Approx(leaf).epsilon(1e-9));
  CHECK(pr[0] == doctest::Approx(1 - 3 * leaf).epsilon(1e-9));

  // echo chamber never exceeds degree
  const Instance k = karate_instance(3);
  std::vector<std::size_t> all(34);
  std::iota(all.begin(), all.end(), 0);
  for (const NodeProfile& np : node_profile(k, all)) CHECK(np.echo_chamber <= np.degree);
}

TEST_CASE("budget specs") {
  CHECK(resolve_k(parse_k_spec("0.1n"), 34, KRounding::Floor) == std::vector<double>{3});
  CHECK(resolve_k(parse_k_spec("0.1n"), 34, KRounding::Ceil) == std::vector<double>{4});
  CHECK(resolve_k(parse_k_spec("0.2n"), 34, KRounding::Round) == std::vector<double>{7});
  CHECK(resolve_k(parse_k_spec("0.2n"), 34, KRounding::Both) == std::vector<double>{6, 7});
  CHECK(resolve_k(parse_k_spec("0.5n"), 34, KRounding::Both) == std::vector<double>{17});
  CHECK(resolve_k(parse_k_spec("n"), 34, KRounding::Floor) == std::vector<double>{34});
  CHECK(resolve_k(parse_k_spec("2n"), 34, KRounding::Floor) == std::vector<double>{34});
  CHECK(resolve_k(parse_k_spec("5"), 34, KRounding::Floor) == std::vector<double>{5});
  CHECK(code_of([] { parse_k_spec("abc"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_k_rounding("up"); }) == ErrorCode::ParseError);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# sweep\n"
      "datasets = karate, two-community:20:0.5:0.1:3\n"
      "algorithms = s_greedy,i_greedy\n"
      "k = 0.1n, 5\n"
      "k-rounding = floor\n"
      "seeds = 1,2,3\n"
      "iterations = 7  # trailing comment\n"
      "format = json\n"
      "polish = false\n"
      "include_timing = false\n");
  const RunConfig cfg = parse_run_config(in);
  CHECK(cfg.datasets.size() == 2);
  CHECK(cfg.algorithms == std::vector<std::string>{"s_greedy", "i_greedy"});
  REQUIRE(cfg.ks.size() == 2);
  CHECK(cfg.ks[0].fraction_of_n);
  CHECK(cfg.k_rounding == KRounding::Floor);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(cfg.iterations == 7);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK_FALSE(cfg.polish);
  CHECK_FALSE(cfg.include_timing);

  RunConfig c2;
  CHECK(code_of([&] { apply_setting(c2, "nonsense", "1"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { apply_setting(c2, "iterations", "many"); }) == ErrorCode::ParseError);
  std::istringstream bad("iterations 5\n");
  CHECK(code_of([&] { parse_run_config(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("benchmark rows") {
  RunConfig cfg;
  cfg.include_timing = false;
  std::ostringstream empty;
  write_csv(empty, cfg, run_benchmark(cfg));
  const std::string header = empty.str();
  CHECK(std::count(header.begin(), header.end(), '\n') == 2);  // rule comment and column header
  CHECK(header.rfind("# k_rounding=ceil", 0) == 0);

  cfg.algorithms = {"exact", "s_greedy", "i_greedy", "bnb", "sdp", "glover"};
  cfg.ks = {parse_k_spec("3")};
  cfg.iterations = 20;
  const auto rows = run_benchmark(cfg);
  REQUIRE(rows.size() == 6);
  for (const BenchRow& r : rows) {
    CAPTURE(r.algorithm);
    CHECK(r.status == "ok");
    CHECK(r.k == 3);
    CHECK(r.feasible);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == doctest::Approx(41));
    CHECK(*r.value == doctest::Approx(r.eta_norm + *r.gain));
    REQUIRE(r.rowsum_bound.has_value());
    CHECK(*r.eigen_bound >= *r.gain - 1e-9);
  }
  CHECK(*rows[4].relax_bound == doctest::Approx(41.1175).epsilon(1e-4));
  CHECK(*rows[5].relax_bound == doctest::Approx(46.2473).epsilon(1e-4));

  // errors are recorded per row and the sweep continues
  RunConfig costly;
  costly.datasets = {"subsetsum:3:1/2"};
  costly.algorithms = {"bnb", "s_greedy"};
  costly.ks = {parse_k_spec("3")};
  costly.bound = BoundKind::Eigen;
  const auto cr = run_benchmark(costly);
  REQUIRE(cr.size() == 2);
  CHECK(cr[0].status == "ok");
  CHECK(cr[1].status == "ok");
  CHECK_FALSE(cr[0].eigen_bound.has_value());
}

TEST_CASE("reports are byte-stable") {
  RunConfig cfg;
  cfg.datasets = {"karate", "two-community:40:0.3:0.05:2"};
  cfg.algorithms = {"s_greedy", "i_greedy", "sdp", "glover"};
  cfg.ks = {parse_k_spec("0.1n")};
  cfg.k_rounding = KRounding::Both;
  cfg.seeds = {1, 2};
  cfg.iterations = 10;
  cfg.include_timing = false;
  for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Markdown}) {
    cfg.format = f;
    std::ostringstream a, b;
    write_report(a, cfg, run_benchmark(cfg));
    write_report(b, cfg, run_benchmark(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().size() > 100);
  }
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch_dir("cli");
  const std::string out = (dir / "x").string();
  CHECK(run_cli("solve --dataset karate --k 3 --algorithm exact") == 0);
  CHECK(run_cli("solve --dataset karate --k 3 --algorithm i_greedy -I 5 --format json") == 0);
  CHECK(run_cli("bound --dataset karate --k 3") == 0);
  CHECK(run_cli("gen two-community --n 20 --p-in 0.5 --p-out 0.1 --seed 3 --out " + out) == 0);
  CHECK(std::filesystem::exists(out + ".edges"));
  CHECK(run_cli("solve --edges " + out + ".edges --exposure " + out + ".exposure --k 2 --algorithm s_greedy") == 0);
  CHECK(run_cli("profile --dataset karate --k 3") == 0);
  CHECK(run_cli("export sdpa --dataset karate --k 3 --out " + out + ".dat-s") == 0);
  CHECK(run_cli("export lp --dataset karate --k 3 --out " + out + ".lp") == 0);

  CHECK(run_cli("solve --no-such-flag") == 2);
  CHECK(run_cli("solve --dataset nowhere:1") == 2);
  CHECK(run_cli("solve --dataset karate --k 3 --algorithm magic") == 2);
  CHECK(run_cli("bound --dataset subsetsum:3:1/2 --k 3") == 3);
  CHECK(run_cli("solve --dataset karate --k 34 --algorithm exact") == 3);
  CHECK(run_cli("solve --dataset karate --k 34 --algorithm bnb --time-limit 0.0001") == 4);
  std::filesystem::remove_all(dir);
}
