#include "divmax/generators.hpp"

#include <cmath>
#include <string>

#include "divmax/error.hpp"
#include "divmax/rng.hpp"

namespace divmax {

namespace {

// Visits each of `count` slots independently with probability p by jumping
// geometric gaps, so the cost is proportional to the number of hits.
template <class Fn>
void sample_slots(std::uint64_t count, double p, Rng& rng, Fn&& hit) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t s = 0; s < count; ++s) hit(s);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t s = 0;
  while (true) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(count - s)) return;
    s += static_cast<std::uint64_t>(skip);
    hit(s);
    if (++s >= count) return;
  }
}

// Inverse of the row-major strict upper triangle enumeration of an h x h block.
std::pair<std::uint64_t, std::uint64_t> triangle_pair(std::uint64_t idx, std::uint64_t h) {
  std::uint64_t i = 0;
  const double hd = static_cast<double>(h);
  const double guess = std::floor(hd - 0.5 - std::sqrt((hd - 0.5) * (hd - 0.5) - 2.0 * static_cast<double>(idx)));
  if (guess > 0.0) {
    i = static_cast<std::uint64_t>(guess);
    if (i >= h) i = h - 1;
  }
  auto row_start = [h](std::uint64_t r) { return r * (2 * h - r - 1) / 2; };
  while (i > 0 && row_start(i) > idx) --i;
  while (row_start(i + 1) <= idx) ++i;
  return {i, i + 1 + (idx - row_start(i))};
}

}  // namespace

Instance gen_two_community(std::size_t n, double p_in, double p_out, std::uint64_t seed, double budget) {
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw Error(ErrorCode::InvalidProbability, "need 0 <= p_out <= p_in <= 1");
  }
  if (n % 2 != 0) throw Error(ErrorCode::InvalidValue, "n must be even, got " + std::to_string(n));
  const std::uint64_t h = n / 2;
  const Rng root(seed);
  std::vector<Edge> edges;

  for (std::uint64_t block = 0; block < 2; ++block) {
    Rng rng = root.split(block);
    const std::uint64_t off = block * h;
    sample_slots(h * (h - (h > 0 ? 1 : 0)) / 2, p_in, rng, [&](std::uint64_t idx) {
      const auto [i, j] = triangle_pair(idx, h);
      edges.push_back(Edge{off + i, off + j, 1.0});
    });
  }
  Rng cross = root.split(2);
  sample_slots(h * h, p_out, cross, [&](std::uint64_t idx) { edges.push_back(Edge{idx / h, h + idx % h, 1.0}); });

  std::vector<int> s(n, 1);
  for (std::size_t i = h; i < n; ++i) s[i] = -1;
  return make_unit_cost_instance(build_graph(edges, n), ExposureVector(std::move(s)), budget);
}

Instance gen_random_exposure(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> s(inst.size());
  for (int& v : s) v = rng.bernoulli(0.5) ? 1 : -1;
  Instance out = inst;
  out.exposure = ExposureVector(std::move(s));
  return out;
}

Instance gen_subsetsum(const std::vector<std::int64_t>& m, std::int64_t M) {
  if (m.empty()) throw Error(ErrorCode::NonPositiveInput, "need at least one item");
  if (M <= 0) throw Error(ErrorCode::NonPositiveInput, "M must be positive");
  std::int64_t A = 0;
  for (std::int64_t v : m) {
    if (v <= 0) throw Error(ErrorCode::NonPositiveInput, "item sizes must be positive");
    A += v;
  }
  const std::size_t n = m.size();
  std::vector<Edge> edges;
  std::vector<double> costs(n + 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back(Edge{0, i + 1, -static_cast<double>(m[i])});
    costs[i + 1] = static_cast<double>(m[i]);
  }
  edges.push_back(Edge{0, n + 1, static_cast<double>(A + 1 - M)});
  costs[n + 1] = static_cast<double>(M + 1);
  return make_instance(build_graph(edges, n + 2), ExposureVector::constant(n + 2, 1), std::move(costs),
                       static_cast<double>(M));
}

}  // namespace divmax
