// Randomness primitives: Laplace sampling, randomized response over bits and
// bounded distances, degree noising, and privacy-budget accounting.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ldq/rng.hpp"

namespace ldq {

enum class Mechanism { kLaplace, kRR };

enum class Protocol { kGraphAgg, kNeighAgg, kNeighAggWithDegreeRound };

// Privacy budgets and the distance threshold shared by the protocols.
// eps1/eps2 drive the two-round graph aggregation; eps drives the
// distance-vector perturbation. threshold (T) replaces infinity in distance
// vectors, bounding Laplace sensitivity at T-1 and fixing the round count.
struct PrivacyParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
  int threshold = 6;
  Mechanism mechanism = Mechanism::kRR;
};

// One draw from Laplace(0, scale); the distribution's variance is 2*scale^2.
inline double laplace_sample(double scale, RngStream& rng) {
  if (!(scale > 0.0)) throw std::domain_error("laplace_sample: scale must be > 0");
  return rng.laplace(scale);
}

// Flip probability of the bit-level randomized response at budget eps.
inline double rr_flip_probability(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("rr_flip_probability: eps must be > 0");
  return 1.0 / (1.0 + std::exp(eps));
}

// Returns 1-b with probability 1/(1+e^eps), else b.
inline int rr_bit(int b, double eps, RngStream& rng) {
  if (b != 0 && b != 1) throw std::domain_error("rr_bit: input must be 0 or 1");
  return rng.bernoulli(rr_flip_probability(eps)) ? 1 - b : b;
}

// Resample probability of the distance-domain randomized response:
// p = T / (e^eps + T - 1).
inline double rr_resample_probability(int threshold, double eps) {
  if (threshold < 1) throw std::domain_error("rr_resample_probability: T must be >= 1");
  if (!(eps > 0.0)) throw std::domain_error("rr_resample_probability: eps must be > 0");
  return static_cast<double>(threshold) /
         (std::exp(eps) + static_cast<double>(threshold) - 1.0);
}

// Keeps x with probability 1-p, otherwise redraws uniformly from {1,...,T}
// (the redraw may return x itself; the p calibration accounts for that).
inline int rr_distance(int x, const PrivacyParams& params, RngStream& rng) {
  const int T = params.threshold;
  if (x < 1 || x > T) throw std::domain_error("rr_distance: value outside [1, T]");
  const double p = rr_resample_probability(T, params.eps);
  if (rng.bernoulli(p)) return static_cast<int>(rng.uniform_int(1, T));
  return x;
}

// Every entry passed independently through rr_bit, including the diagonal
// position (consumers only read off-diagonal entries).
inline std::vector<std::uint8_t> perturb_neighbor_bits(
    const std::vector<std::uint8_t>& bits, double eps, RngStream& rng) {
  const double p = rr_flip_probability(eps);
  std::vector<std::uint8_t> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint8_t b = bits[i] ? 1 : 0;
    out[i] = rng.bernoulli(p) ? (1 - b) : b;
  }
  return out;
}

// d + (2/eps1) * Lap(1).
inline double noisy_degree(double d, double eps1, RngStream& rng) {
  if (!(eps1 > 0.0)) throw std::domain_error("noisy_degree: eps1 must be > 0");
  return d + (2.0 / eps1) * laplace_sample(1.0, rng);
}

// Per-edge privacy loss of a full protocol run. Graph aggregation reports
// each edge twice in both rounds; neighbor aggregation reports each edge
// twice in its single perturbation.
inline double total_budget(Protocol protocol, const PrivacyParams& params) {
  switch (protocol) {
    case Protocol::kGraphAgg:
    case Protocol::kNeighAggWithDegreeRound:
      if (!(params.eps1 > 0.0) || !(params.eps2 > 0.0))
        throw std::domain_error("total_budget: eps1 and eps2 must be > 0");
      return 2.0 * (params.eps1 + params.eps2);
    case Protocol::kNeighAgg:
      if (!(params.eps > 0.0))
        throw std::domain_error("total_budget: eps must be > 0");
      return 2.0 * params.eps;
  }
  throw std::domain_error("total_budget: unknown protocol");
}

}  // namespace ldq
