#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace divmax {

/// Undirected weighted edge; `u < v` once stored in a Graph.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

struct Neighbor {
  std::size_t node = 0;
  double weight = 0.0;
};

/// Sparse symmetric weighted graph in CSR form.
///
/// Neighbor lists are sorted by node index. Degrees are weighted row sums of
/// the adjacency matrix. The Laplacian L = D - A is never stored; use
/// `laplacian_apply` or `dense_laplacian`.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t i) const;
  std::span<const double> degrees() const noexcept { return degree_; }
  double degree(std::size_t i) const { return degree_.at(i); }
  std::size_t neighbor_count(std::size_t i) const { return neighbors(i).size(); }

  /// Sum of |w_ij| over edges, plus one. Used to scale absolute tolerances.
  double tolerance_scale() const noexcept { return 1.0 + abs_weight_sum_; }

  std::vector<double> laplacian_apply(std::span<const double> x) const;
  /// Row-major n*n copy of L.
  std::vector<double> dense_laplacian() const;

  friend Graph build_graph(std::span<const Edge> edges, std::size_t node_count);

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> degree_;
  double abs_weight_sum_ = 0.0;
};

/// Builds a graph from (i, j, w) triples. `node_count` of zero means
/// "one past the largest index seen". Throws SelfLoop, DuplicateEdge
/// (either orientation), or IndexOutOfRange.
Graph build_graph(std::span<const Edge> edges, std::size_t node_count = 0);

/// Exposure vector with entries in {-1, +1}.
class ExposureVector {
 public:
  ExposureVector() = default;
  /// Throws NonBinaryExposure on any entry other than -1 or +1.
  explicit ExposureVector(std::vector<int> values);
  static ExposureVector from_reals(std::span<const double> values);
  static ExposureVector constant(std::size_t n, int value = 1);

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  std::span<const int> values() const noexcept { return values_; }
  ExposureVector negated() const;

  friend bool operator==(const ExposureVector&, const ExposureVector&) = default;

 private:
  std::vector<int> values_;
};

/// One solvable problem: graph, exposure, nonnegative costs and a budget.
struct Instance {
  Graph graph;
  ExposureVector exposure;
  std::vector<double> costs;
  double budget = 0.0;

  std::size_t size() const noexcept { return graph.node_count(); }
  /// Throws LengthMismatch or InvalidValue (negative cost or budget).
  void validate() const;
};

Instance make_instance(Graph graph, ExposureVector exposure, std::vector<double> costs, double budget);
Instance make_unit_cost_instance(Graph graph, ExposureVector exposure, double budget);

/// Raw diversity index: sum over edges of w_ij (s_i - s_j)^2.
double diversity_index(const Graph& g, const ExposureVector& s);
/// The same value divided by four, i.e. weighted count of cross edges.
double diversity_index_normalized(const Graph& g, const ExposureVector& s);

/// y = s - 2 Diag(s) x: negates the listed entries. Throws IndexOutOfRange.
ExposureVector apply_flips(const ExposureVector& s, std::span<const std::size_t> flipped);

}  // namespace divmax
