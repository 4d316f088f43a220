#pragma once

// Independent reference implementations used by the test suites. Nothing
// here calls into the library's solvers; objective values are rebuilt from
// the raw edge list with dense linear algebra.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "divmax/graph.hpp"

namespace oracle {

struct RandomInstance {
  std::size_t n = 0;
  std::vector<divmax::Edge> edges;
  std::vector<int> s;
  std::vector<double> costs;
  double budget = 0.0;

  divmax::Instance instance() const {
    return divmax::make_instance(divmax::build_graph(edges, n), divmax::ExposureVector(s), costs, budget);
  }
};

/// Erdos-Renyi style graph with random weights. `integer_weights` draws from
/// {1, 2, 3} so objective values are exact in floating point.
inline RandomInstance random_instance(std::mt19937_64& gen, std::size_t n, double density, bool integer_weights,
                                      double budget) {
  RandomInstance r;
  r.n = n;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> w3(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u01(gen) < density) {
        const double w = integer_weights ? static_cast<double>(w3(gen)) : 2.0 * (1.0 - u01(gen));  // (0, 2]
        r.edges.push_back({i, j, w});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) r.s.push_back(u01(gen) < 0.5 ? 1 : -1);
  r.costs.assign(n, 1.0);
  r.budget = budget;
  return r;
}

inline Eigen::MatrixXd dense_laplacian(std::size_t n, const std::vector<divmax::Edge>& edges) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& e : edges) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    L(u, u) += e.weight;
    L(v, v) += e.weight;
    L(u, v) -= e.weight;
    L(v, u) -= e.weight;
  }
  return L;
}

/// Diag(s) L Diag(s) - Diag(q), q_i = s_i (L s)_i, in dense form.
inline Eigen::MatrixXd dense_objective(std::size_t n, const std::vector<divmax::Edge>& edges, const std::vector<int>& s) {
  const Eigen::MatrixXd L = dense_laplacian(n, edges);
  Eigen::VectorXd sv(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) sv(static_cast<Eigen::Index>(i)) = s[i];
  const Eigen::MatrixXd Q = sv.asDiagonal() * L * sv.asDiagonal();
  const Eigen::VectorXd q = sv.cwiseProduct(L * sv);
  return Q - Eigen::MatrixXd(q.asDiagonal());
}

/// Raw diversity index s^T L s.
inline double eta(std::size_t n, const std::vector<divmax::Edge>& edges, const std::vector<int>& s) {
  double total = 0.0;
  for (const auto& e : edges) {
    const double d = s[e.u] - s[e.v];
    total += e.weight * d * d;
  }
  (void)n;
  return total;
}

struct BruteForce {
  double value = 0.0;
  std::uint64_t mask = 0;
};

/// max x^T P x over all subsets with b^T x <= k (n <= 24).
inline BruteForce brute_force(const Eigen::MatrixXd& P, const std::vector<double>& costs, double budget) {
  const auto n = static_cast<std::size_t>(P.rows());
  BruteForce best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) cost += costs[i];
    }
    if (cost > budget + 1e-9 * std::max(1.0, budget)) continue;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1U)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1U) v += P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    if (v > best.value) best = {v, mask};
  }
  return best;
}

inline double lambda_max(const Eigen::MatrixXd& P) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(P.rows() - 1);
}

/// Does some subset of `items` sum to exactly `target`?
inline bool subset_sum(const std::vector<std::int64_t>& items, std::int64_t target) {
  std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
  reach[0] = 1;
  for (std::int64_t m : items) {
    for (std::int64_t t = target; t >= m; --t) {
      if (reach[static_cast<std::size_t>(t - m)]) reach[static_cast<std::size_t>(t)] = 1;
    }
  }
  return reach[static_cast<std::size_t>(target)] != 0;
}

}  // namespace oracle
