// Error metrics over distance matrices: mean per-pair relative absolute
// error (eta_1) and relative error of the means (eta_2).
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "ldq/distance.hpp"

namespace ldq {

enum class UnreachablePolicy {
  kCap,      // truth entries for unreachable pairs replaced by the cap value
  kExclude,  // such pairs dropped from the averages
};

struct MetricReport {
  double rmae = 0.0;  // eta_1
  double mre = 0.0;   // eta_2
  std::size_t pair_count = 0;
  UnreachablePolicy policy = UnreachablePolicy::kCap;
};

namespace detail {

template <typename PairFn>
inline std::size_t for_each_pair(const DistanceMatrix& truth,
                                 const DistanceMatrix& noisy, double cap,
                                 UnreachablePolicy policy, PairFn&& fn) {
  const std::size_t n = truth.size();
  if (noisy.size() != n)
    throw std::domain_error("metrics: matrix dimensions differ");
  if (!(cap > 0.0)) throw std::domain_error("metrics: cap must be positive");
  std::size_t count = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (truth.at(u, u) != 0.0)
      throw std::domain_error("metrics: truth diagonal must be zero");
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      double d = truth.at(u, v);
      if (is_unreachable(d)) {
        if (policy == UnreachablePolicy::kExclude) continue;
        d = cap;
      }
      if (d == 0.0)
        throw std::domain_error("metrics: zero off-diagonal truth distance");
      double dn = noisy.at(u, v);
      if (is_unreachable(dn)) dn = cap;  // synthetic-output convention
      fn(d, dn);
      ++count;
    }
  }
  return count;
}

}  // namespace detail

// eta_1 = mean over ordered off-diagonal pairs of |d' - d| / |d|.
inline double rmae(const DistanceMatrix& truth, const DistanceMatrix& noisy,
                   double cap, UnreachablePolicy policy = UnreachablePolicy::kCap) {
  double sum = 0.0;
  const std::size_t count = detail::for_each_pair(
      truth, noisy, cap, policy,
      [&](double d, double dn) { sum += std::fabs(dn - d) / std::fabs(d); });
  if (count == 0) throw std::domain_error("rmae: no pairs to average");
  return sum / static_cast<double>(count);
}

// eta_2 = |mean(d') - mean(d)| / |mean(d)| over the same pairs.
inline double mre(const DistanceMatrix& truth, const DistanceMatrix& noisy,
                  double cap, UnreachablePolicy policy = UnreachablePolicy::kCap) {
  double sum_d = 0.0, sum_dn = 0.0;
  const std::size_t count = detail::for_each_pair(
      truth, noisy, cap, policy, [&](double d, double dn) {
        sum_d += d;
        sum_dn += dn;
      });
  if (count == 0) throw std::domain_error("mre: no pairs to average");
  if (sum_d == 0.0) throw std::domain_error("mre: zero mean truth distance");
  return std::fabs(sum_dn - sum_d) / std::fabs(sum_d);
}

inline MetricReport compute_metrics(const DistanceMatrix& truth,
                                    const DistanceMatrix& noisy, double cap,
                                    UnreachablePolicy policy = UnreachablePolicy::kCap) {
  MetricReport report;
  report.policy = policy;
  double sum_err = 0.0, sum_d = 0.0, sum_dn = 0.0;
  report.pair_count = detail::for_each_pair(
      truth, noisy, cap, policy, [&](double d, double dn) {
        sum_err += std::fabs(dn - d) / std::fabs(d);
        sum_d += d;
        sum_dn += dn;
      });
  if (report.pair_count == 0) throw std::domain_error("metrics: no pairs to average");
  if (sum_d == 0.0) throw std::domain_error("metrics: zero mean truth distance");
  report.rmae = sum_err / static_cast<double>(report.pair_count);
  report.mre = std::fabs(sum_dn - sum_d) / std::fabs(sum_d);
  return report;
}

}  // namespace ldq
