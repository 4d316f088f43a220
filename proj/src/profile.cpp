#include "divmax/profile.hpp"

#include <cmath>

#include "divmax/error.hpp"

namespace divmax {

std::vector<double> pagerank(const Graph& g, double damping, double tol, std::size_t max_iters) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& e : g.neighbors(i)) out_weight[i] += std::abs(e.weight);
  }
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> pr(n, uniform), next(n);
  for (std::size_t it = 0; it < max_iters; ++it) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (out_weight[i] == 0.0) dangling += pr[i];
    }
    const double base = (1.0 - damping) * uniform + damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t i = 0; i < n; ++i) {
      if (out_weight[i] == 0.0) continue;
      const double share = damping * pr[i] / out_weight[i];
      for (const Neighbor& e : g.neighbors(i)) next[e.node] += share * std::abs(e.weight);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - pr[i]);
    pr.swap(next);
    if (change < tol) break;
  }
  return pr;
}

namespace {

template <class T>
std::size_t competition_rank(const std::vector<T>& values, std::size_t i) {
  std::size_t above = 0;
  for (const T& v : values) {
    if (v > values[i]) ++above;
  }
  return above + 1;
}

}  // namespace

std::vector<NodeProfile> node_profile(const Instance& inst, const std::vector<std::size_t>& order) {
  const std::size_t n = inst.size();
  std::vector<std::size_t> echo(n, 0), degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& e : inst.graph.neighbors(i)) {
      ++degree[i];
      if (inst.exposure[e.node] == inst.exposure[i]) ++echo[i];
    }
  }
  const std::vector<double> pr = pagerank(inst.graph);

  std::vector<NodeProfile> out;
  for (std::size_t v : order) {
    if (v >= n) throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v));
    NodeProfile p;
    p.node = v;
    p.echo_chamber = echo[v];
    p.degree = degree[v];
    p.pagerank = pr[v];
    p.echo_rank = competition_rank(echo, v);
    p.degree_rank = competition_rank(degree, v);
    p.pagerank_rank = competition_rank(pr, v);
    out.push_back(p);
  }
  return out;
}

std::vector<NodeProfile> node_profile(const Instance& inst, const FlipSet& selection) {
  return node_profile(inst, std::vector<std::size_t>(selection.nodes().begin(), selection.nodes().end()));
}

}  // namespace divmax
