// Dense all-pairs distance storage and the exact BFS oracle.
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ldq/graph.hpp"

namespace ldq {

class DistanceMatrix {
 public:
  // Marker for pairs with no connecting path when no cap is applied.
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0)
      : n_(n), entries_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& at(std::size_t u, std::size_t v) { return entries_[u * n_ + v]; }
  double at(std::size_t u, std::size_t v) const { return entries_[u * n_ + v]; }
  double operator()(std::size_t u, std::size_t v) const { return at(u, v); }

  const std::vector<double>& entries() const { return entries_; }
  std::vector<double>& entries() { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

inline bool is_unreachable(double d) {
  return d == DistanceMatrix::kUnreachable;
}

// One BFS per vertex. Entries are hop counts; unreachable pairs and pairs
// beyond `cap` receive the cap value when given, otherwise the unreachable
// marker.
inline DistanceMatrix exact_all_pairs(const Graph& g,
                                      std::optional<double> cap = std::nullopt) {
  const std::size_t n = g.vertex_count();
  if (cap && *cap <= 0.0)
    throw std::domain_error("exact_all_pairs: cap must be positive");
  const double far = cap ? *cap : DistanceMatrix::kUnreachable;
  DistanceMatrix dist(n, far);

  std::vector<std::uint32_t> hop(n);
  std::vector<VertexId> queue(n);
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (VertexId s = 0; s < n; ++s) {
    std::fill(hop.begin(), hop.end(), kUnseen);
    hop[s] = 0;
    queue[0] = s;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
      const VertexId u = queue[head++];
      for (VertexId v : g.neighbors(u)) {
        if (hop[v] != kUnseen) continue;
        hop[v] = hop[u] + 1;
        queue[tail++] = v;
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (hop[v] == kUnseen) continue;  // stays at cap / marker
      double d = static_cast<double>(hop[v]);
      if (cap && d > *cap) d = *cap;
      dist.at(s, v) = d;
    }
    dist.at(s, s) = 0.0;
  }
  return dist;
}

}  // namespace ldq
