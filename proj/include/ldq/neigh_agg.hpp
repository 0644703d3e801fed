// Iterative perturbed distance-vector exchange: initialize per-vertex
// vectors, perturb each once, then run T-1 synchronous min-aggregation
// rounds to estimate all-pairs distances.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ldq/distance.hpp"
#include "ldq/graph.hpp"
#include "ldq/mechanisms.hpp"
#include "ldq/rng.hpp"

namespace ldq {

// One vertex's length-n distance estimates at a given round. Real-valued in
// Laplace mode, integers in [1, T] in RR mode; the self entry stays 0.
struct DistanceVector {
  VertexId owner = 0;
  int round = 0;
  std::vector<double> values;
};

// Entry u = 0, neighbors = 1, everything else = T.
inline DistanceVector init_distance_vector(const Graph& g, VertexId u, int threshold) {
  const std::size_t n = g.vertex_count();
  if (u >= n) throw std::domain_error("init_distance_vector: vertex out of range");
  if (threshold < 1) throw std::domain_error("init_distance_vector: T must be >= 1");
  DistanceVector vec;
  vec.owner = u;
  vec.round = 0;
  vec.values.assign(n, static_cast<double>(threshold));
  for (VertexId v : g.neighbors(u)) vec.values[v] = 1.0;
  vec.values[u] = 0.0;
  return vec;
}

// Single perturbation of a round-0 vector. Laplace mode adds independent
// noise of scale (T-1)/eps to every non-self entry; RR mode resamples each
// non-self entry in the distance domain. The self entry is never touched.
inline DistanceVector perturb_distance_vector(const DistanceVector& vec,
                                              const PrivacyParams& params,
                                              RngStream& rng) {
  const int T = params.threshold;
  if (vec.round != 0)
    throw std::domain_error("perturb_distance_vector: vector is not round-0");
  for (std::size_t j = 0; j < vec.values.size(); ++j) {
    const double v = vec.values[j];
    if (j == vec.owner) {
      if (v != 0.0)
        throw std::domain_error("perturb_distance_vector: self entry must be 0");
    } else if (v != 1.0 && v != static_cast<double>(T)) {
      throw std::domain_error(
          "perturb_distance_vector: entries must be 1 (neighbor) or T (unknown)");
    }
  }
  if (!(params.eps > 0.0))
    throw std::domain_error("perturb_distance_vector: eps must be > 0");

  DistanceVector out = vec;
  if (params.mechanism == Mechanism::kLaplace) {
    const double scale = static_cast<double>(T - 1) / params.eps;
    if (scale > 0.0) {
      for (std::size_t j = 0; j < out.values.size(); ++j)
        if (j != out.owner) out.values[j] += laplace_sample(scale, rng);
    }
    // T = 1 or eps = +inf: zero sensitivity, nothing to add.
  } else {
    const double p = rr_resample_probability(T, params.eps);
    for (std::size_t j = 0; j < out.values.size(); ++j) {
      if (j == out.owner) continue;
      if (rng.bernoulli(p))
        out.values[j] = static_cast<double>(rng.uniform_int(1, T));
    }
  }
  return out;
}

// One synchronous round: every vertex u updates targets j outside
// N(u) and {u} to min{ min_{i in N(u)} D_i[j] + 1, D_u[j] }, reading only
// round k-1 state. Entries for j in N(u) and the self entry are copied
// unchanged.
inline std::vector<DistanceVector> aggregate_round(
    const std::vector<DistanceVector>& vectors, const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (vectors.size() != n)
    throw std::domain_error("aggregate_round: need one vector per vertex");
  const int round = vectors.empty() ? 0 : vectors[0].round;
  for (std::size_t u = 0; u < n; ++u) {
    if (vectors[u].owner != u)
      throw std::domain_error("aggregate_round: vectors must be ordered by owner");
    if (vectors[u].round != round)
      throw std::domain_error("aggregate_round: round mismatch across vectors");
    if (vectors[u].values.size() != n)
      throw std::domain_error("aggregate_round: vector length != vertex count");
  }

  std::vector<DistanceVector> next = vectors;
  std::vector<double> best(n);
  for (VertexId u = 0; u < n; ++u) {
    next[u].round = round + 1;
    const auto& nbrs = g.neighbors(u);
    if (nbrs.empty()) continue;
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    for (VertexId i : nbrs) {
      const auto& row = vectors[i].values;
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] < best[j]) best[j] = row[j];
    }
    auto& out = next[u].values;
    const auto& prev = vectors[u].values;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      while (idx < nbrs.size() && nbrs[idx] < j) ++idx;
      const bool is_neighbor = idx < nbrs.size() && nbrs[idx] == j;
      if (is_neighbor || j == u) continue;  // frozen targets
      out[j] = std::min(best[j] + 1.0, prev[j]);
    }
  }
  return next;
}

// Per-round snapshot hook for trace-level testing.
using RoundObserver = std::function<void(int round, const std::vector<DistanceVector>&)>;

// Full protocol: initialize, perturb once per vertex (vertex u draws from
// rng.derive(u)), run exactly T-1 synchronous rounds, then clamp Laplace
// entries into [1, T]. Row u of the output is vertex u's final vector with
// a zero diagonal. Passing eps = +infinity disables the perturbation.
inline DistanceMatrix run_neigh_agg(const Graph& g, const PrivacyParams& params,
                                    RngStream& rng,
                                    const RoundObserver& observer = {}) {
  const std::size_t n = g.vertex_count();
  const int T = params.threshold;
  if (T < 1) throw std::domain_error("run_neigh_agg: T must be >= 1");
  const bool noise_free = std::isinf(params.eps);
  if (!noise_free && !(params.eps > 0.0))
    throw std::domain_error("run_neigh_agg: eps must be > 0");

  std::vector<DistanceVector> vectors;
  vectors.reserve(n);
  for (VertexId u = 0; u < n; ++u) {
    DistanceVector vec = init_distance_vector(g, u, T);
    if (!noise_free) {
      RngStream stream = rng.derive(u);
      vec = perturb_distance_vector(vec, params, stream);
    }
    vectors.push_back(std::move(vec));
  }
  if (observer) observer(0, vectors);

  for (int k = 1; k <= T - 1; ++k) {
    vectors = aggregate_round(vectors, g);
    if (observer) observer(k, vectors);
  }

  DistanceMatrix result(n);
  for (VertexId u = 0; u < n; ++u) {
    auto& row = vectors[u].values;
    for (std::size_t j = 0; j < n; ++j) {
      double v = row[j];
      if (params.mechanism == Mechanism::kLaplace && j != u) {
        if (v < 1.0) v = 1.0;
        if (v > static_cast<double>(T)) v = static_cast<double>(T);
      }
      result.at(u, j) = v;
    }
    result.at(u, u) = 0.0;
  }
  return result;
}

// ceil(3(n - t) / (delta + 1)) + additive_constant, with t the number of
// distinct degrees and delta the minimum degree. The additive constant
// stands in for the bound's unspecified O(1) term and defaults to 1;
// for disconnected graphs the bound applies per component.
inline int diameter_upper_bound(const Graph& g, int additive_constant = 1) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::domain_error("diameter_upper_bound: empty graph");
  const std::size_t t = distinct_degree_count(g);
  const std::size_t delta = min_degree(g);
  const std::size_t numer = 3 * (n - t);
  const std::size_t denom = delta + 1;
  const std::size_t q = (numer + denom - 1) / denom;
  return static_cast<int>(q) + additive_constant;
}

}  // namespace ldq
