// Shared helpers for the test suites: small named graphs and an independent
// Floyd-Warshall distance oracle used to cross-check the BFS implementation.
#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "ldq/graph.hpp"

namespace ldq_test {

inline ldq::Graph make_path(std::size_t n) {
  std::vector<std::pair<ldq::VertexId, ldq::VertexId>> edges;
  for (ldq::VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return ldq::Graph::from_edges(n, edges);
}

inline ldq::Graph make_complete(std::size_t n) {
  std::vector<std::pair<ldq::VertexId, ldq::VertexId>> edges;
  for (ldq::VertexId u = 0; u < n; ++u)
    for (ldq::VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return ldq::Graph::from_edges(n, edges);
}

inline ldq::Graph make_star(std::size_t n) {
  std::vector<std::pair<ldq::VertexId, ldq::VertexId>> edges;
  for (ldq::VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
  return ldq::Graph::from_edges(n, edges);
}

// O(n^3) brute-force all-pairs oracle, independent of the BFS path.
inline std::vector<std::vector<double>> floyd_warshall(const ldq::Graph& g) {
  const std::size_t n = g.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0.0;
    for (ldq::VertexId v : g.neighbors(static_cast<ldq::VertexId>(u))) d[u][v] = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

inline bool same_graph(const ldq::Graph& a, const ldq::Graph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  for (ldq::VertexId u = 0; u < a.vertex_count(); ++u)
    if (a.neighbors(u) != b.neighbors(u)) return false;
  return true;
}

}  // namespace ldq_test
