#include "divmax/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divmax/error.hpp"

namespace divmax {

namespace {

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(i) + " with n = " + std::to_string(n));
}

}  // namespace

ObjectiveMatrix build_objective(const Graph& g, const ExposureVector& s) {
  const std::size_t n = g.node_count();
  if (s.size() != n) throw Error(ErrorCode::LengthMismatch, "build_objective: |s| != n");

  ObjectiveMatrix p;
  p.diagonal_.assign(n, 0.0);
  p.q_.assign(n, 0.0);
  p.offdiag_abs_.assign(n, 0.0);
  p.offsets_.assign(n + 1, 0);
  p.scale_ = g.tolerance_scale();

  for (std::size_t i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    p.offsets_[i + 1] = p.offsets_[i] + nbrs.size();
    double same_minus_diff = 0.0;
    double ls = g.degree(i) * s[i];
    for (const Neighbor& nb : nbrs) {
      const double sign = static_cast<double>(s[i] * s[nb.node]);
      same_minus_diff += nb.weight * sign;
      ls -= nb.weight * s[nb.node];
      const double v = -sign * nb.weight;
      p.entries_.push_back(Neighbor{nb.node, v});
      p.offdiag_abs_[i] += std::abs(v);
    }
    p.diagonal_[i] = same_minus_diff;
    p.q_[i] = s[i] * ls;
  }
  return p;
}

ObjectiveMatrix objective_from_parts(std::vector<double> diagonal, std::span<const Edge> offdiag) {
  const std::size_t n = diagonal.size();
  Graph pattern = build_graph(offdiag, n);

  ObjectiveMatrix p;
  p.diagonal_ = std::move(diagonal);
  p.q_.assign(n, 0.0);
  p.offdiag_abs_.assign(n, 0.0);
  p.offsets_.assign(n + 1, 0);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nbrs = pattern.neighbors(i);
    p.offsets_[i + 1] = p.offsets_[i] + nbrs.size();
    for (const Neighbor& nb : nbrs) {
      p.entries_.push_back(nb);
      p.offdiag_abs_[i] += std::abs(nb.weight);
    }
    scale += std::abs(p.diagonal_[i]) + p.offdiag_abs_[i];
  }
  p.scale_ = scale;
  return p;
}

std::span<const Neighbor> ObjectiveMatrix::row(std::size_t i) const {
  check_index(i, size());
  return std::span<const Neighbor>(entries_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double ObjectiveMatrix::entry(std::size_t i, std::size_t j) const {
  check_index(i, size());
  check_index(j, size());
  if (i == j) return diagonal_[i];
  const auto r = row(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Neighbor& a, std::size_t col) { return a.node < col; });
  return (it != r.end() && it->node == j) ? it->weight : 0.0;
}

std::vector<double> ObjectiveMatrix::dense() const {
  const std::size_t n = size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i * n + i] = diagonal_[i];
    for (const Neighbor& e : row(i)) d[i * n + e.node] = e.weight;
  }
  return d;
}

FlipSet FlipSet::from_nodes(const ObjectiveMatrix& p, std::span<const double> costs, std::vector<std::size_t> nodes) {
  if (costs.size() != p.size()) throw Error(ErrorCode::LengthMismatch, "FlipSet: cost vector");
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  FlipSet x;
  x.nodes_ = std::move(nodes);
  x.value_ = objective_gain(p, x.nodes_);
  for (std::size_t i : x.nodes_) x.cost_ += costs[i];
  return x;
}

bool FlipSet::contains(std::size_t i) const { return std::binary_search(nodes_.begin(), nodes_.end(), i); }

void FlipSet::insert(const ObjectiveMatrix& p, std::span<const double> costs, std::size_t j) {
  value_ += marginal_gain(p, *this, j);
  cost_ += costs[j];
  nodes_.insert(std::lower_bound(nodes_.begin(), nodes_.end(), j), j);
}

void FlipSet::erase(const ObjectiveMatrix& p, std::span<const double> costs, std::size_t j) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), j);
  if (it == nodes_.end() || *it != j) throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(j) + " not selected");
  nodes_.erase(it);
  value_ -= marginal_gain(p, *this, j);
  cost_ -= costs[j];
}

double objective_gain(const ObjectiveMatrix& p, std::span<const std::size_t> nodes) {
  const std::size_t n = p.size();
  std::vector<char> in(n, 0);
  for (std::size_t i : nodes) {
    check_index(i, n);
    in[i] = 1;
  }
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) continue;
    v += p.diagonal(i);
    for (const Neighbor& e : p.row(i)) {
      if (in[e.node]) v += e.weight;
    }
  }
  return v;
}

double objective_gain(const ObjectiveMatrix& p, const FlipSet& x) { return objective_gain(p, x.nodes()); }

double marginal_gain(const ObjectiveMatrix& p, const FlipSet& x, std::size_t j) {
  check_index(j, p.size());
  if (x.contains(j)) throw Error(ErrorCode::AlreadySelected, "node " + std::to_string(j));
  const auto r = p.row(j);
  const auto sel = x.nodes();
  double cross = 0.0;
  if (r.size() <= sel.size()) {
    for (const Neighbor& e : r) {
      if (std::binary_search(sel.begin(), sel.end(), e.node)) cross += e.weight;
    }
  } else {
    for (std::size_t i : sel) cross += p.entry(j, i);
  }
  return p.diagonal(j) + 2.0 * cross;
}

ExposureVector apply_flips(const ExposureVector& s, const FlipSet& x) { return apply_flips(s, x.nodes()); }

}  // namespace divmax
