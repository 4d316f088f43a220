#include "divmax/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "divmax/error.hpp"

namespace divmax {

Graph build_graph(std::span<const Edge> edges, std::size_t node_count) {
  std::size_t n = node_count;
  if (n == 0) {
    for (const Edge& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  }

  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") with n = " + std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "node " + std::to_string(e.u));
    if (!std::isfinite(e.weight)) throw Error(ErrorCode::InvalidValue, "non-finite edge weight");
    g.edges_.push_back(Edge{std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }

  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(g.edges_.size());
  for (const Edge& e : g.edges_) keys.emplace_back(e.u, e.v);
  std::sort(keys.begin(), keys.end());
  if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
    throw Error(ErrorCode::DuplicateEdge,
                "(" + std::to_string(dup->first) + ", " + std::to_string(dup->second) + ")");
  }

  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = Neighbor{e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = Neighbor{e.u, e.weight};
    g.abs_weight_sum_ += std::abs(e.weight);
  }

  g.degree_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    double d = 0.0;
    for (auto it = first; it != last; ++it) d += it->weight;
    g.degree_[i] = d;
  }
  return g;
}

std::span<const Neighbor> Graph::neighbors(std::size_t i) const {
  if (i >= node_count()) throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(i));
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::vector<double> Graph::laplacian_apply(std::span<const double> x) const {
  if (x.size() != node_count()) throw Error(ErrorCode::LengthMismatch, "laplacian_apply");
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = degree_[i] * x[i];
    for (const Neighbor& nb : neighbors(i)) acc -= nb.weight * x[nb.node];
    y[i] = acc;
  }
  return y;
}

std::vector<double> Graph::dense_laplacian() const {
  const std::size_t n = node_count();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    l[i * n + i] = degree_[i];
    for (const Neighbor& nb : neighbors(i)) l[i * n + nb.node] -= nb.weight;
  }
  return l;
}

ExposureVector::ExposureVector(std::vector<int> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 1 && values_[i] != -1) {
      throw Error(ErrorCode::NonBinaryExposure,
                  "entry " + std::to_string(i) + " is " + std::to_string(values_[i]));
    }
  }
}

ExposureVector ExposureVector::from_reals(std::span<const double> values) {
  std::vector<int> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 1.0) {
      v[i] = 1;
    } else if (values[i] == -1.0) {
      v[i] = -1;
    } else {
      throw Error(ErrorCode::NonBinaryExposure, "entry " + std::to_string(i) + " is " + std::to_string(values[i]));
    }
  }
  return ExposureVector(std::move(v));
}

ExposureVector ExposureVector::constant(std::size_t n, int value) {
  return ExposureVector(std::vector<int>(n, value));
}

ExposureVector ExposureVector::negated() const {
  std::vector<int> v(values_);
  for (int& x : v) x = -x;
  return ExposureVector(std::move(v));
}

void Instance::validate() const {
  const std::size_t n = graph.node_count();
  if (exposure.size() != n) throw Error(ErrorCode::LengthMismatch, "exposure has wrong length");
  if (costs.size() != n) throw Error(ErrorCode::LengthMismatch, "cost vector has wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(costs[i] >= 0.0) || !std::isfinite(costs[i])) {
      throw Error(ErrorCode::InvalidValue, "cost of node " + std::to_string(i) + " must be finite and >= 0");
    }
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw Error(ErrorCode::InvalidValue, "budget must be finite and >= 0");
}

Instance make_instance(Graph graph, ExposureVector exposure, std::vector<double> costs, double budget) {
  Instance inst{std::move(graph), std::move(exposure), std::move(costs), budget};
  inst.validate();
  return inst;
}

Instance make_unit_cost_instance(Graph graph, ExposureVector exposure, double budget) {
  std::vector<double> costs(graph.node_count(), 1.0);
  return make_instance(std::move(graph), std::move(exposure), std::move(costs), budget);
}

double diversity_index(const Graph& g, const ExposureVector& s) {
  if (s.size() != g.node_count()) throw Error(ErrorCode::LengthMismatch, "diversity_index");
  double eta = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = static_cast<double>(s[e.u] - s[e.v]);
    eta += e.weight * d * d;
  }
  return eta;
}

double diversity_index_normalized(const Graph& g, const ExposureVector& s) {
  return diversity_index(g, s) / 4.0;
}

ExposureVector apply_flips(const ExposureVector& s, std::span<const std::size_t> flipped) {
  std::vector<int> y(s.values().begin(), s.values().end());
  for (std::size_t i : flipped) {
    if (i >= y.size()) throw Error(ErrorCode::IndexOutOfRange, "flip of node " + std::to_string(i));
    y[i] = -s[i];
  }
  return ExposureVector(std::move(y));
}

}  // namespace divmax
