// Seeded random-graph models for experiments and dataset stand-ins.
#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ldq/graph.hpp"
#include "ldq/rng.hpp"

namespace ldq {
namespace gen {

// Uniform simple graph with exactly m edges.
inline Graph gnm(std::size_t n, std::size_t m, RngStream& rng) {
  if (n < 2) throw std::domain_error("gnm: need n >= 2");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (m > max_edges) throw std::domain_error("gnm: too many edges");
  std::set<std::pair<VertexId, VertexId>> edges;
  while (edges.size() < m) {
    const auto u = static_cast<VertexId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const auto v = static_cast<VertexId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    if (u == v) continue;
    edges.emplace(std::min(u, v), std::max(u, v));
  }
  GraphBuilder builder(n);
  for (auto [u, v] : edges) builder.add_edge(u, v);
  return builder.take();
}

// Each potential edge present independently with probability p.
inline Graph gnp(std::size_t n, double p, RngStream& rng) {
  if (n < 1) throw std::domain_error("gnp: need n >= 1");
  if (p < 0.0 || p > 1.0) throw std::domain_error("gnp: p must be in [0, 1]");
  GraphBuilder builder(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) builder.add_edge(u, v);
  return builder.take();
}

// Ego-style social network: vertex 0 is the ego adjacent to every other
// vertex; the remaining edges are wired inside overlapping "circles" of
// skewed sizes, giving high clustering and a long low-degree tail. Used as
// the structural stand-in when a real social-network edge list is not
// available.
inline Graph ego_network(std::size_t n, std::size_t m, RngStream& rng,
                         std::size_t circle_count = 18) {
  if (n < 3) throw std::domain_error("ego_network: need n >= 3");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (m < n - 1 || m > max_edges)
    throw std::domain_error("ego_network: m out of range for ego wiring");

  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace(0, v);

  // Circle sizes spread over roughly [n/70, n/5]; members drawn uniformly.
  std::vector<std::vector<VertexId>> circles(circle_count);
  const std::int64_t lo = std::max<std::int64_t>(3, static_cast<std::int64_t>(n / 70));
  const std::int64_t hi = std::max<std::int64_t>(lo + 1, static_cast<std::int64_t>(n / 5));
  for (auto& circle : circles) {
    const auto size = static_cast<std::size_t>(rng.uniform_int(lo, hi));
    std::set<VertexId> members;
    while (members.size() < size)
      members.insert(static_cast<VertexId>(
          rng.uniform_int(1, static_cast<std::int64_t>(n) - 1)));
    circle.assign(members.begin(), members.end());
  }

  std::size_t stale = 0;
  while (edges.size() < m) {
    const auto& circle =
        circles[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(circle_count) - 1))];
    const auto i = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(circle.size()) - 1));
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(circle.size()) - 1));
    VertexId u = circle[i], v = circle[j];
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!edges.emplace(u, v).second && ++stale > 50 * m) {
      // Circles saturated; spill the remainder uniformly.
      while (edges.size() < m) {
        const auto a = static_cast<VertexId>(rng.uniform_int(1, static_cast<std::int64_t>(n) - 1));
        const auto b = static_cast<VertexId>(rng.uniform_int(1, static_cast<std::int64_t>(n) - 1));
        if (a == b) continue;
        edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }

  GraphBuilder builder(n);
  for (auto [u, v] : edges) builder.add_edge(u, v);
  return builder.take();
}

}  // namespace gen
}  // namespace ldq
