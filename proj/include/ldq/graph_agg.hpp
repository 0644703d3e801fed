// Two-round synthetic-graph protocols: AND aggregation, the Bernoulli AND/OR
// mixture, their calibration formulas, and the naive single-report baseline.
#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ldq/graph.hpp"
#include "ldq/mechanisms.hpp"
#include "ldq/rng.hpp"

namespace ldq {

class CalibrationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// One vertex's length-n binary neighbor row, possibly perturbed.
struct NeighborBits {
  VertexId owner = 0;
  std::vector<std::uint8_t> bits;
};

// Symmetric 0/1 adjacency with zero diagonal, stored dense.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool at(std::size_t u, std::size_t v) const { return bits_[u * n_ + v] != 0; }

  void set_pair(std::size_t u, std::size_t v, bool value) {
    bits_[u * n_ + v] = value ? 1 : 0;
    bits_[v * n_ + u] = value ? 1 : 0;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (std::uint8_t b : bits_) twice += b;
    return twice / 2;
  }

  double density() const {
    if (n_ < 2) return 0.0;
    return static_cast<double>(2 * edge_count()) /
           (static_cast<double>(n_) * static_cast<double>(n_ - 1));
  }

  void flip_off_diagonal() {
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (u != v) bits_[u * n_ + v] ^= 1;
  }

  Graph to_graph() const {
    GraphBuilder builder(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (at(u, v)) builder.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return builder.take();
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct GraphAggCalibration {
  double eps1 = std::numeric_limits<double>::quiet_NaN();
  double eps2 = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  bool alpha_clamped = false;
  bool used_complement = false;
};

struct SyntheticGraph {
  BitMatrix adjacency;
  double gamma_hat = std::numeric_limits<double>::quiet_NaN();  // broadcast estimate
  double gamma_bar = std::numeric_limits<double>::quiet_NaN();  // realized density
  GraphAggCalibration calibration;

  // Same edge-list text format as ingestion, plus one header comment with the
  // calibration record.
  void write_edge_list(std::ostream& os) const {
    os << "# gamma_hat=" << gamma_hat << " gamma_bar=" << gamma_bar
       << " p=" << calibration.p << " alpha=" << calibration.alpha
       << " eps1=" << calibration.eps1 << " eps2=" << calibration.eps2 << '\n';
    const std::size_t n = adjacency.size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (adjacency.at(u, v)) os << u << ' ' << v << '\n';
  }
};

// Sum of noisy degrees over n(n-1), clamped one potential edge's worth into
// the open interval (Laplace noise can push the raw estimate outside [0,1]).
inline double estimate_density(const std::vector<double>& noisy_degrees,
                               std::size_t n) {
  if (n < 2) throw std::domain_error("estimate_density: need n >= 2");
  if (noisy_degrees.size() != n)
    throw std::domain_error("estimate_density: degree list length != n");
  double sum = 0.0;
  for (double d : noisy_degrees) sum += d;
  const double pairs2 = static_cast<double>(n) * static_cast<double>(n - 1);
  const double lo = 1.0 / pairs2;
  const double gamma = sum / pairs2;
  return std::min(std::max(gamma, lo), 1.0 - lo);
}

// eps2 = ln(1/(2 gamma_hat) - 1); the induced flip probability
// 1/(e^eps2 + 1) equals exactly 2 gamma_hat.
inline double epsilon2_for_density(double gamma_hat) {
  if (!(gamma_hat > 0.0) || !(gamma_hat < 0.25))
    throw CalibrationError(
        "epsilon2_for_density: requires 0 < gamma_hat < 1/4 "
        "(use the AND/OR variant or the complement graph)");
  return std::log(1.0 / (2.0 * gamma_hat) - 1.0);
}

struct AlphaResult {
  double value = 1.0;
  bool clamped = false;  // fires iff p > 2*gamma_hat
};

// alpha = (2 gamma_hat + p - 2) / (2p - 2), clamped into [0, 1].
inline AlphaResult alpha_for(double gamma_hat, double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("alpha_for: p must be in (0, 1)");
  const double raw = (2.0 * gamma_hat + p - 2.0) / (2.0 * p - 2.0);
  AlphaResult result;
  result.value = std::min(std::max(raw, 0.0), 1.0);
  result.clamped = raw < 0.0 || raw > 1.0;
  return result;
}

namespace detail {

inline void check_lists(const std::vector<NeighborBits>& lists) {
  const std::size_t n = lists.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lists[i].owner != i)
      throw std::domain_error("aggregate: lists must be ordered by owner");
    if (lists[i].bits.size() != n)
      throw std::domain_error("aggregate: list length != vertex count");
  }
}

}  // namespace detail

// Edge (i,j) present iff both reports agree: N_i[j] AND N_j[i].
inline BitMatrix aggregate_and(const std::vector<NeighborBits>& lists) {
  detail::check_lists(lists);
  const std::size_t n = lists.size();
  BitMatrix adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      adj.set_pair(i, j, lists[i].bits[j] && lists[j].bits[i]);
  return adj;
}

// Per unordered pair an independent Bernoulli(alpha) chooses AND, else OR.
// Draws come from the curator's stream in (i,j) lexicographic order.
inline BitMatrix aggregate_and_or(const std::vector<NeighborBits>& lists,
                                  double alpha, RngStream& rng) {
  detail::check_lists(lists);
  if (alpha < 0.0 || alpha > 1.0)
    throw std::domain_error("aggregate_and_or: alpha must be within [0, 1]");
  const std::size_t n = lists.size();
  BitMatrix adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool use_and = rng.bernoulli(alpha);
      const bool a = lists[i].bits[j] != 0;
      const bool b = lists[j].bits[i] != 0;
      adj.set_pair(i, j, use_and ? (a && b) : (a || b));
    }
  return adj;
}

enum class GraphAggVariant { kAndOnly, kAndOr };

namespace detail {

constexpr std::uint64_t kCuratorStream = 0xC07A7011'5EEDULL;

inline std::vector<std::uint8_t> neighbor_row(const Graph& g, VertexId u) {
  std::vector<std::uint8_t> row(g.vertex_count(), 0);
  for (VertexId v : g.neighbors(u)) row[v] = 1;
  return row;
}

}  // namespace detail

// Round 1: noisy degrees -> density estimate broadcast. Round 2: full-row
// randomized response with p = 1/(e^eps2 + 1), curator aggregation by the
// chosen variant. For the AND-only variant eps2 is derived from the density
// estimate when not supplied in params. When the estimate exceeds 1/2 the
// protocol aggregates the complement graph and complements the output.
// Vertex i draws from rng.derive(i); the curator draws from its own stream.
inline SyntheticGraph run_graph_agg(const Graph& g, const PrivacyParams& params,
                                    GraphAggVariant variant, RngStream& rng) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::domain_error("run_graph_agg: need n >= 2");
  if (!(params.eps1 > 0.0))
    throw std::domain_error("run_graph_agg: eps1 must be > 0");
  if (variant == GraphAggVariant::kAndOr && !(params.eps2 > 0.0))
    throw std::domain_error("run_graph_agg: eps2 must be > 0 for the AND/OR variant");

  std::vector<RngStream> streams;
  streams.reserve(n);
  for (VertexId u = 0; u < n; ++u) streams.push_back(rng.derive(u));

  std::vector<double> noisy_degrees(n);
  for (VertexId u = 0; u < n; ++u)
    noisy_degrees[u] =
        noisy_degree(static_cast<double>(g.degree(u)), params.eps1, streams[u]);
  const double gamma_hat = estimate_density(noisy_degrees, n);

  // Complement degrees are (n-1) - d_i, so the complement's estimate is
  // 1 - gamma_hat without a second privacy round.
  const bool use_complement = gamma_hat > 0.5;
  const Graph complement_graph = use_complement ? g.complement() : Graph();
  const Graph& work = use_complement ? complement_graph : g;
  const double gamma_work = use_complement ? 1.0 - gamma_hat : gamma_hat;

  SyntheticGraph result;
  result.gamma_hat = gamma_hat;
  result.calibration.eps1 = params.eps1;
  result.calibration.used_complement = use_complement;

  double eps2;
  double alpha = 1.0;
  if (variant == GraphAggVariant::kAndOnly) {
    // ln(1/(2 gamma_hat) - 1) unless the caller pins the second-round budget.
    eps2 = params.eps2 > 0.0 ? params.eps2 : epsilon2_for_density(gamma_work);
  } else {
    eps2 = params.eps2;
    const AlphaResult a = alpha_for(gamma_work, rr_flip_probability(eps2));
    alpha = a.value;
    result.calibration.alpha_clamped = a.clamped;
  }
  const double p = rr_flip_probability(eps2);
  result.calibration.eps2 = eps2;
  result.calibration.p = p;
  result.calibration.alpha = alpha;

  std::vector<NeighborBits> reports(n);
  for (VertexId u = 0; u < n; ++u) {
    reports[u].owner = u;
    reports[u].bits =
        perturb_neighbor_bits(detail::neighbor_row(work, u), eps2, streams[u]);
  }

  if (variant == GraphAggVariant::kAndOnly) {
    result.adjacency = aggregate_and(reports);
  } else {
    RngStream curator = rng.derive(detail::kCuratorStream);
    result.adjacency = aggregate_and_or(reports, alpha, curator);
  }
  if (use_complement) result.adjacency.flip_off_diagonal();
  result.gamma_bar = result.adjacency.density();
  return result;
}

// Naive baseline: vertex u perturbs only positions u+1..n-1 of its row, the
// curator mirrors the upper triangle. Preserves eps-LDP per edge.
inline SyntheticGraph run_rnl_baseline(const Graph& g, double eps, RngStream& rng) {
  const std::size_t n = g.vertex_count();
  const double p = rr_flip_probability(eps);
  SyntheticGraph result;
  result.adjacency = BitMatrix(n);
  for (VertexId u = 0; u < n; ++u) {
    RngStream stream = rng.derive(u);
    const auto row = detail::neighbor_row(g, u);
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::uint8_t b = row[v];
      const std::uint8_t reported = stream.bernoulli(p) ? (1 - b) : b;
      result.adjacency.set_pair(u, v, reported != 0);
    }
  }
  result.gamma_bar = result.adjacency.density();
  result.calibration.p = p;
  return result;
}

}  // namespace ldq
