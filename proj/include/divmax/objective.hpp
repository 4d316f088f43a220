#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "divmax/graph.hpp"

namespace divmax {

/// The quadratic form of the flip problem: P = Diag(s) L Diag(s) - Diag(q),
/// q_i = s_i (L s)_i.
///
/// Off-diagonal entries share the graph's sparsity pattern:
///   P_ij = -s_i w_ij s_j   (i != j, edge)
///   P_ii = sum_j w_ij s_i s_j
/// so that x^T P x is one quarter of the change in the raw diversity index
/// when the nodes in x are flipped.
class ObjectiveMatrix {
 public:
  ObjectiveMatrix() = default;

  std::size_t size() const noexcept { return diagonal_.size(); }
  double diagonal(std::size_t i) const { return diagonal_[i]; }
  std::span<const double> diagonal() const noexcept { return diagonal_; }
  std::span<const double> q() const noexcept { return q_; }
  /// Off-diagonal entries of row i, sorted by column.
  std::span<const Neighbor> row(std::size_t i) const;
  /// P_ij by binary search; zero for non-edges.
  double entry(std::size_t i, std::size_t j) const;
  /// sum_{j != i} |P_ij|
  double offdiag_abs_sum(std::size_t i) const { return offdiag_abs_[i]; }
  /// Tolerance scale inherited from the graph (1 + sum |w|).
  double tolerance_scale() const noexcept { return scale_; }

  /// Row-major dense copy.
  std::vector<double> dense() const;

  friend ObjectiveMatrix build_objective(const Graph& g, const ExposureVector& s);
  /// Builds a matrix directly from a diagonal and symmetric off-diagonal triples
  /// (used for subproblems and tests).
  friend ObjectiveMatrix objective_from_parts(std::vector<double> diagonal, std::span<const Edge> offdiag);

 private:
  std::vector<double> diagonal_;
  std::vector<double> q_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> entries_;
  std::vector<double> offdiag_abs_;
  double scale_ = 1.0;
};

/// Throws LengthMismatch when |s| != n.
ObjectiveMatrix build_objective(const Graph& g, const ExposureVector& s);
ObjectiveMatrix objective_from_parts(std::vector<double> diagonal, std::span<const Edge> offdiag);

/// Binary selection x (sorted node list) with cached x^T P x and b^T x.
class FlipSet {
 public:
  FlipSet() = default;

  /// Sorts and deduplicates `nodes`, then computes value and cost from scratch.
  static FlipSet from_nodes(const ObjectiveMatrix& p, std::span<const double> costs, std::vector<std::size_t> nodes);

  std::span<const std::size_t> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  bool contains(std::size_t i) const;
  double value() const noexcept { return value_; }
  double cost() const noexcept { return cost_; }

  /// O(min(deg, size)) update. Throws AlreadySelected / IndexOutOfRange.
  void insert(const ObjectiveMatrix& p, std::span<const double> costs, std::size_t j);
  void erase(const ObjectiveMatrix& p, std::span<const double> costs, std::size_t j);

  friend bool operator==(const FlipSet& a, const FlipSet& b) { return a.nodes_ == b.nodes_; }

 private:
  std::vector<std::size_t> nodes_;
  double value_ = 0.0;
  double cost_ = 0.0;
};

/// x^T P x evaluated from scratch. Throws IndexOutOfRange.
double objective_gain(const ObjectiveMatrix& p, std::span<const std::size_t> nodes);
double objective_gain(const ObjectiveMatrix& p, const FlipSet& x);

/// (x + e_j)^T P (x + e_j) - x^T P x = P_jj + 2 sum_{i in x} P_ij.
/// Throws AlreadySelected when j is in x.
double marginal_gain(const ObjectiveMatrix& p, const FlipSet& x, std::size_t j);

ExposureVector apply_flips(const ExposureVector& s, const FlipSet& x);

}  // namespace divmax
