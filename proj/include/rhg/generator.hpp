#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "rhg/core.hpp"
#include "rhg/geometry.hpp"
#include "rhg/rng.hpp"

namespace rhg {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class EdgeBuilder { naive, fast };

struct BuildOptions {
  EdgeBuilder builder = EdgeBuilder::fast;
  /// When false only the degree sequence is computed and `edges` stays empty.
  bool keep_edges = true;
};

/// One realisation of the graph.
struct GraphSample {
  ModelParams params;
  std::vector<PolarPoint> points;
  std::vector<Edge> edges;  ///< sorted, u < v; empty when built without edges
  std::vector<std::uint32_t> degrees;
  std::vector<NodeId> radius_order;  ///< node ids by increasing radius, ties by id
  std::uint64_t n_realized = 0;
  bool has_edges = true;
};

/// Inverse CDF of the radial density: sinh(alpha r / 2) = sqrt(u) sinh(alpha R_n / 2).
inline double sample_radius(double u, const ModelParams& params) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("sample_radius: u must lie in [0, 1)");
  const double a = params.alpha();
  const double r = 2.0 / a * std::asinh(std::sqrt(u) * params.half_alpha_sinh());
  return std::min(r, std::nextafter(params.r_max(), 0.0));
}

/// Angle uniform on (-pi, pi].
inline double sample_angle(double u) { return pi - 2.0 * pi * u; }

/// Draws `count` points: all radii first, then all angles.
inline std::vector<PolarPoint> sample_points(const ModelParams& params, std::uint64_t count,
                                             Rng& rng) {
  std::vector<PolarPoint> points(count);
  for (auto& p : points) p.r = sample_radius(rng.uniform(), params);
  for (auto& p : points) p.theta = sample_angle(rng.uniform());
  return points;
}

/// Draws only the radii; consumes the same leading draws as sample_points.
inline std::vector<double> sample_radii(const ModelParams& params, std::uint64_t count, Rng& rng) {
  std::vector<double> radii(count);
  for (auto& r : radii) r = sample_radius(rng.uniform(), params);
  return radii;
}

inline std::vector<NodeId> radius_order(std::span<const PolarPoint> points) {
  std::vector<NodeId> order(points.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return points[a].r < points[b].r || (points[a].r == points[b].r && a < b);
  });
  return order;
}

/// Calls visit(u, v) with u < v for every connected pair, in lexicographic order.
template <class Visit>
void for_each_edge_naive(std::span<const PolarPoint> points, const ModelParams& params,
                         Visit&& visit) {
  std::vector<NodeKey> keys(points.size());
  std::transform(points.begin(), points.end(), keys.begin(), make_key);
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j)
      if (is_connected(keys[i], keys[j], params))
        visit(static_cast<NodeId>(i), static_cast<NodeId>(j));
}

namespace detail {

/// Angular half-width searched around a node at radius r for partners whose
/// radius is at least y: the leading-order estimate with a safety factor of 2,
/// floored at the exact angle theta_r(y) and padded for rounding. Since
/// theta_r(y) is non-increasing in both arguments the window contains every
/// partner. The exact angle is only evaluated when the cheap upper bound
///   theta <= 2 asin(sqrt(cosh R / (2 sinh r sinh y)))
/// (from 1 - cos theta <= cosh R / (sinh r sinh y)) does not already sit below
/// the scaled estimate.
inline double search_window(double r, double y, double sinh_r, double sinh_y,
                            const ModelParams& params) {
  constexpr double safety = 2.0;
  constexpr double pad = 1.0 + 1e-9;
  const double R = params.r_max();
  if (y < R - r) return pi * pad;
  const double scaled = safety * theta_max_estimate(r, y, params);
  if (scaled >= pi) return pi * pad;
  const double ratio = params.cosh_r_max() / (2.0 * sinh_r * sinh_y);
  const double bound = ratio >= 1.0 ? pi : 2.0 * std::asin(std::sqrt(ratio));
  double window = scaled;
  if (bound > scaled) window = std::max(scaled, theta_from_offset(r, y, r + y - R, R));
  return window * pad + 1e-12;
}

struct BandEntry {
  double theta = 0.0;
  NodeKey key;
  NodeId id = 0;
  std::uint32_t rank = 0;
};

struct AngularBand {
  double min_radius = 0.0;
  double sinh_min_radius = 0.0;
  std::vector<BandEntry> entries;  // sorted by (theta, id)
};

}  // namespace detail

/// Calls visit(u, v) once for every connected pair, with u the endpoint that
/// comes first in radius order. Nodes are split into ceil(log2 n) radial bands
/// by rank; each band is sorted by angle, and a node only tests partners in its
/// own or outer bands that fall inside the angular search window for that band.
/// Every candidate is confirmed with the exact predicate, so the pair set equals
/// the naive one.
template <class Visit>
void for_each_edge_fast(std::span<const PolarPoint> points, const ModelParams& params,
                        Visit&& visit) {
  const std::size_t n = points.size();
  if (n < 2) return;
  std::vector<NodeKey> keys(n);
  std::transform(points.begin(), points.end(), keys.begin(), make_key);

  const auto order = radius_order(points);
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<std::uint32_t>(i);

  const std::size_t band_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))));
  std::vector<detail::AngularBand> bands(band_count);
  std::vector<std::uint32_t> band_of(n);
  for (std::size_t b = 0; b < band_count; ++b) {
    const std::size_t lo = b * n / band_count;
    const std::size_t hi = (b + 1) * n / band_count;
    auto& band = bands[b];
    band.min_radius = lo < hi ? points[order[lo]].r : params.r_max();
    band.sinh_min_radius = std::sinh(band.min_radius);
    for (std::size_t i = lo; i < hi; ++i) {
      const NodeId id = order[i];
      band.entries.push_back({points[id].theta, keys[id], id, static_cast<std::uint32_t>(i)});
      band_of[id] = static_cast<std::uint32_t>(b);
    }
    std::sort(band.entries.begin(), band.entries.end(), [](const auto& x, const auto& y) {
      return x.theta < y.theta || (x.theta == y.theta && x.id < y.id);
    });
  }

  // Outer bands only hold nodes of higher rank, so only the own band needs the rank test.
  auto scan = [&](NodeId u, const detail::AngularBand& band, bool own, double from, double to) {
    const auto& entries = band.entries;
    auto it = std::lower_bound(entries.begin(), entries.end(), from,
                               [](const detail::BandEntry& e, double t) { return e.theta < t; });
    const NodeKey& ku = keys[u];
    const std::uint32_t ru = rank[u];
    for (; it != entries.end() && it->theta <= to; ++it) {
      if (own && it->rank <= ru) continue;
      if (is_connected(ku, it->key, params)) visit(u, it->id);
    }
  };

  for (NodeId u = 0; u < n; ++u) {
    const double r = points[u].r;
    const double theta = points[u].theta;
    for (std::size_t b = band_of[u]; b < band_count; ++b) {
      const auto& band = bands[b];
      if (band.entries.empty()) continue;
      const bool own = b == band_of[u];
      const bool inner = band.min_radius < r;
      const double window =
          detail::search_window(r, inner ? r : band.min_radius, keys[u].sinh_r,
                                inner ? keys[u].sinh_r : band.sinh_min_radius, params);
      if (window >= pi) {
        scan(u, band, own, -pi, pi);
        continue;
      }
      const double from = theta - window;
      const double to = theta + window;
      scan(u, band, own, std::max(from, -pi), std::min(to, pi));
      if (from < -pi) scan(u, band, own, from + 2.0 * pi, pi);
      if (to > pi) scan(u, band, own, -pi, to - 2.0 * pi);
    }
  }
}

/// O(n^2) reference builder; returns the sorted edge list.
inline std::vector<Edge> build_edges_naive(std::span<const PolarPoint> points,
                                           const ModelParams& params) {
  std::vector<Edge> edges;
  for_each_edge_naive(points, params, [&](NodeId u, NodeId v) { edges.push_back({u, v}); });
  return edges;
}

/// Angular-window builder; returns the same sorted edge list as the naive one.
inline std::vector<Edge> build_edges_fast(std::span<const PolarPoint> points,
                                          const ModelParams& params) {
  std::vector<Edge> edges;
  for_each_edge_fast(points, params,
                     [&](NodeId u, NodeId v) { edges.push_back({std::min(u, v), std::max(u, v)}); });
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Builds a graph on given points (also the hook tests use to force positions).
inline GraphSample make_graph(std::vector<PolarPoint> points, const ModelParams& params,
                              const BuildOptions& options = {}) {
  GraphSample g{params, std::move(points), {}, {}, {}, 0, options.keep_edges};
  const std::size_t n = g.points.size();
  g.n_realized = n;
  g.degrees.assign(n, 0);
  g.radius_order = radius_order(g.points);
  auto count = [&](NodeId u, NodeId v) {
    ++g.degrees[u];
    ++g.degrees[v];
  };
  if (options.keep_edges) {
    g.edges = options.builder == EdgeBuilder::naive ? build_edges_naive(g.points, params)
                                                    : build_edges_fast(g.points, params);
    for (const auto& e : g.edges) count(e.u, e.v);
  } else if (options.builder == EdgeBuilder::naive) {
    for_each_edge_naive(g.points, params, count);
  } else {
    for_each_edge_fast(g.points, params, count);
  }
  return g;
}

/// Samples n i.i.d. points from mu_n and connects pairs at distance at most R_n.
inline GraphSample sample_graph(const ModelParams& params, RngSeed seed,
                                const BuildOptions& options = {}) {
  Rng rng(seed);
  return make_graph(sample_points(params, params.n(), rng), params, options);
}

/// Poissonized variant: N ~ Poisson(n) points from mu_n.
inline GraphSample sample_graph_poisson(const ModelParams& params, RngSeed seed,
                                        const BuildOptions& options = {}) {
  Rng rng(seed);
  const std::uint64_t count = rng.poisson(params.n_real());
  return make_graph(sample_points(params, count, rng), params, options);
}

struct DegreeStats {
  std::vector<std::uint32_t> top_k_degrees;               ///< k largest degrees, descending
  std::vector<std::uint32_t> degrees_of_k_smallest_radii;  ///< in radius order
  /// Largest m such that deg(X_(1)) > ... > deg(X_(m)) > deg(X_(i)) for all i > m.
  std::size_t max_prefix = 0;
};

/// Longest radius-order prefix satisfying the strict ordering chain. Ties break
/// the chain. If the chain holds for m it holds for every smaller m, so the
/// answer is found by walking down from the longest strictly decreasing prefix.
inline std::size_t ordering_prefix(std::span<const std::uint32_t> degrees,
                                   std::span<const NodeId> order) {
  const std::size_t n = order.size();
  if (n == 0) return 0;
  std::vector<std::uint32_t> suffix_max(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix_max[i] = std::max(suffix_max[i + 1], degrees[order[i]]);
  std::size_t decreasing = 1;
  while (decreasing < n && degrees[order[decreasing]] < degrees[order[decreasing - 1]]) ++decreasing;
  for (std::size_t m = decreasing; m >= 1; --m) {
    if (m == n || degrees[order[m - 1]] > suffix_max[m]) return m;
  }
  return 0;
}

inline DegreeStats degree_stats(const GraphSample& g, std::size_t k) {
  const std::size_t n = g.degrees.size();
  if (k < 1 || k > n) throw DomainError("degree_stats: k must lie in [1, n]");
  DegreeStats stats;
  stats.top_k_degrees.resize(k);
  std::partial_sort_copy(g.degrees.begin(), g.degrees.end(), stats.top_k_degrees.begin(),
                         stats.top_k_degrees.end(), std::greater<>());
  stats.degrees_of_k_smallest_radii.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    stats.degrees_of_k_smallest_radii.push_back(g.degrees[g.radius_order[i]]);
  stats.max_prefix = ordering_prefix(g.degrees, g.radius_order);
  return stats;
}

}  // namespace rhg
