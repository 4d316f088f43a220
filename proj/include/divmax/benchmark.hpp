#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divmax/exact.hpp"
#include "divmax/instance_io.hpp"

namespace divmax {

/// `Both` runs the floor and the ceiling of a fractional budget.
enum class KRounding { Floor, Ceil, Round, Both };

const char* to_string(KRounding r);
KRounding parse_k_rounding(const std::string& s);

/// A budget given either absolutely ("5") or as a fraction of n ("0.1n", "n").
struct KSpec {
  double value = 0.0;
  bool fraction_of_n = false;
  std::string text;
};

KSpec parse_k_spec(const std::string& s);
/// Integer budgets for an instance of size n; fractional specs are rounded
/// with `rule` and clamped to [0, n]. Absolute specs are used as given.
std::vector<double> resolve_k(const KSpec& spec, std::size_t n, KRounding rule);

enum class OutputFormat { Csv, Json, Markdown };

const char* to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& s);

struct RunConfig {
  /// Dataset specs, see `load_dataset`.
  std::vector<std::string> datasets{"karate"};
  /// Any of s_greedy, i_greedy, exact, bnb, sdp, glover.
  std::vector<std::string> algorithms;
  std::vector<KSpec> ks;
  KRounding k_rounding = KRounding::Ceil;
  /// "unit" replaces every cost by 1, "file" keeps the dataset's costs.
  std::string cost_mode = "file";
  /// I for i_greedy, rounding samples for sdp and glover.
  std::size_t iterations = 100;
  std::vector<std::uint64_t> seeds{1};
  bool polish = true;
  OutputFormat format = OutputFormat::Csv;
  /// Seconds for bnb.
  double time_limit = 60.0;
  BoundKind bound = BoundKind::Rowsum;
  bool compute_bounds = true;
  /// Include the runtime column; off for byte-comparable reports.
  bool include_timing = true;
  std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
};

/// Sets one key (dashes and underscores are interchangeable). List values are
/// comma separated. Throws ParseError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment.
RunConfig parse_run_config(std::istream& in);

/// Dataset specs:
///   karate
///   karate-d:SEED                      random exposure on the karate graph
///   two-community:N:P_IN:P_OUT:SEED
///   subsetsum:M:m1/m2/...
///   files:EDGES:EXPOSURE[:COSTS]
LoadedInstance load_dataset(const std::string& spec);

struct BenchRow {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  double k = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;
  double eta_norm = 0.0;
  std::optional<double> gain;
  std::optional<double> value;
  /// Relaxation optimum without and with the eta(s)/4 offset.
  std::optional<double> relax_gain;
  std::optional<double> relax_bound;
  std::optional<double> eigen_bound;
  std::optional<double> gersh_bound;
  std::optional<double> rowsum_bound;
  bool feasible = false;
  bool proven = false;
  std::string status;
  double runtime_ms = 0.0;
  std::vector<std::size_t> selection;
};

/// Runs every (dataset, k, algorithm, seed) combination in that nesting
/// order. Solver errors are recorded in the row's status and the sweep goes
/// on. Each returned value is re-checked against a from-scratch diversity
/// index of the flipped exposure; a mismatch marks the row "inconsistent".
std::vector<BenchRow> run_benchmark(const RunConfig& cfg);

void write_csv(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows);
void write_json(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows);
void write_markdown(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows);
/// Dispatches on cfg.format.
void write_report(std::ostream& out, const RunConfig& cfg, const std::vector<BenchRow>& rows);

}  // namespace divmax
