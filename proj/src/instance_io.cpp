#include "divmax/instance_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "divmax/error.hpp"

namespace divmax {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> out;
  std::string tok;
  while (ls >> tok) out.push_back(tok);
  return out;
}

bool skip_line(const std::vector<std::string>& tok) { return tok.empty() || tok.front().front() == '#'; }

Error parse_error(const char* file, std::size_t line, const std::string& what) {
  return Error(ErrorCode::ParseError, std::string(file) + " line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& s, const char* file, std::size_t line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw parse_error(file, line, "'" + s + "' is not a number");
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LoadedInstance read_instance(std::istream& edges, std::istream& exposure, std::istream* costs, double budget) {
  LoadedInstance out;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& id) {
    auto [it, fresh] = index.emplace(id, out.ids.size());
    if (fresh) out.ids.push_back(id);
    return it->second;
  };

  std::vector<Edge> edge_list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (skip_line(tok)) continue;
    if (tok.size() != 2 && tok.size() != 3) throw parse_error("edges", line_no, "expected 'src dst [weight]'");
    const double w = tok.size() == 3 ? parse_number(tok[2], "edges", line_no) : 1.0;
    const std::size_t u = intern(tok[0]);
    const std::size_t v = intern(tok[1]);
    edge_list.push_back(Edge{u, v, w});
  }
  const std::size_t n = out.ids.size();

  std::vector<int> s(n, 0);
  line_no = 0;
  while (std::getline(exposure, line)) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (skip_line(tok)) continue;
    if (tok.size() != 2) throw parse_error("exposure", line_no, "expected 'id value'");
    const auto it = index.find(tok[0]);
    if (it == index.end()) throw Error(ErrorCode::UnknownNodeInExposure, "node '" + tok[0] + "' is not in the edge list");
    const double v = parse_number(tok[1], "exposure", line_no);
    if (v != 1.0 && v != -1.0) {
      throw Error(ErrorCode::NonBinaryExposure, "node '" + tok[0] + "' has exposure " + tok[1]);
    }
    s[it->second] = static_cast<int>(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) throw Error(ErrorCode::ParseError, "exposure: no value for node '" + out.ids[i] + "'");
  }

  std::vector<double> b(n, 1.0);
  if (costs != nullptr) {
    line_no = 0;
    while (std::getline(*costs, line)) {
      ++line_no;
      const auto tok = tokens_of(line);
      if (skip_line(tok)) continue;
      if (tok.size() != 2) throw parse_error("costs", line_no, "expected 'id cost'");
      const auto it = index.find(tok[0]);
      if (it == index.end()) throw parse_error("costs", line_no, "unknown node '" + tok[0] + "'");
      b[it->second] = parse_number(tok[1], "costs", line_no);
    }
  }

  out.instance = make_instance(build_graph(edge_list, n), ExposureVector(std::move(s)), std::move(b), budget);
  return out;
}

LoadedInstance load_instance(const std::string& edge_path, const std::string& exposure_path,
                             const std::optional<std::string>& cost_path, double budget) {
  auto open = [](const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    return f;
  };
  std::ifstream e = open(edge_path);
  std::ifstream x = open(exposure_path);
  if (cost_path) {
    std::ifstream c = open(*cost_path);
    return read_instance(e, x, &c, budget);
  }
  return read_instance(e, x, nullptr, budget);
}

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

void write_edges(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids) {
  for (const Edge& e : inst.graph.edges()) out << ids[e.u] << ' ' << ids[e.v] << ' ' << fmt(e.weight) << '\n';
}

void write_exposure(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids) {
  for (std::size_t i = 0; i < inst.size(); ++i) out << ids[i] << ' ' << inst.exposure[i] << '\n';
}

void write_costs(std::ostream& out, const Instance& inst, const std::vector<std::string>& ids) {
  for (std::size_t i = 0; i < inst.size(); ++i) out << ids[i] << ' ' << fmt(inst.costs[i]) << '\n';
}

void save_instance(const std::string& prefix, const LoadedInstance& li) {
  auto write = [&](const std::string& suffix, auto&& fn) {
    std::ofstream f(prefix + suffix);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + prefix + suffix);
    fn(f, li.instance, li.ids);
    if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + prefix + suffix);
  };
  write(".edges", write_edges);
  write(".exposure", write_exposure);
  write(".costs", write_costs);
}

}  // namespace divmax
