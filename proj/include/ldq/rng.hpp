// Deterministic random streams for reproducible protocol runs.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ldq {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  std::uint64_t z = splitmix64(s);
  return z ^ splitmix64(s);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// One independent stream per (seed, stream-id). Identical pairs reproduce
// identical draws on every platform; derived child streams are independent,
// so per-vertex or per-trial work can run in parallel without coordination.
// Engine: xoshiro256++ seeded through splitmix64.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : key_(detail::mix_key(seed, stream_id)) {
    std::uint64_t s = key_;
    for (auto& w : state_) w = detail::splitmix64(s);
  }

  // Pure function of the construction key: derive(i) twice gives the same
  // stream regardless of how much this stream has been consumed.
  RngStream derive(std::uint64_t child_id) const {
    return RngStream(key_, child_id);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  // Strictly inside (0, 1); endpoints excluded so inverse-CDF transforms
  // stay finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Inclusive bounds, rejection-sampled so the draw is exactly uniform.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Laplace(0, scale) by inverse CDF from a single uniform draw.
  double laplace(double scale) {
    const double u = uniform01() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -scale * sign * std::log1p(-2.0 * std::fabs(u));
  }

 private:
  std::uint64_t key_;
  std::uint64_t state_[4];
};

}  // namespace ldq
