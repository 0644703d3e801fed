// Monte Carlo models of the final estimated distance for a non-neighbor
// pair: Y1 (Laplace perturbation) and Y2 (randomized response), built from
// the structure-dependent discrete variables W, W1, W2, plus the exact
// order-statistics oracle for the minimum of i.i.d. Laplace draws.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ldq/rng.hpp"

namespace ldq {

// Explicit per-value counts of the W histogram: a_k counts target-adjacent
// vertices at hop t-1, t, t+1; m[k-1] counts k-hop neighbors, k = 1..T-1.
struct WHistogramCounts {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::vector<double> m;
};

struct SimulationSpec {
  std::size_t population = 10000;  // n
  int true_distance = 4;           // t
  int threshold = 6;               // T
  double eps = 1.0;
  std::size_t repeats = 1000;
  // Empty: uniform approximation (equal mass on every support value).
  std::optional<WHistogramCounts> counts;
};

struct DiscreteDistribution {
  std::vector<double> values;
  std::vector<double> masses;  // not normalized
  double total = 0.0;

  double sample(RngStream& rng) const {
    double u = rng.uniform01() * total;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      u -= masses[i];
      if (u < 0.0) return values[i];
    }
    return values.back();
  }
};

struct WTables {
  DiscreteDistribution w;   // union of both supports
  DiscreteDistribution w1;  // support T+1 .. T+T-1
  DiscreteDistribution w2;  // support t, t+1, t+2
};

namespace detail {

inline void validate_spec(const SimulationSpec& spec) {
  if (spec.population < 3)
    throw std::domain_error("simulation: population must be at least 3");
  if (spec.true_distance < 2)
    throw std::domain_error("simulation: true distance must be >= 2 (non-neighbor pair)");
  if (spec.true_distance > spec.threshold - 2)
    throw std::domain_error("simulation: requires t <= T - 2");
  if (spec.repeats == 0) throw std::domain_error("simulation: repeats must be >= 1");
}

}  // namespace detail

// Builds the W / W1 / W2 probability tables. W2 carries masses (a1, a2, a3)
// on {t, t+1, t+2}; W1 carries the k-hop counts on {T+1, ..., T+T-1} with
// the rows at T+t-1, T+t, T+t+1 adjusted to m_{t-1}-a1, m_t-a2-1,
// m_{t+1}-a3. W is their union with masses proportional to the totals. In
// uniform-approximation mode every support value gets equal mass.
inline WTables build_w_histograms(const SimulationSpec& spec) {
  detail::validate_spec(spec);
  const int t = spec.true_distance;
  const int T = spec.threshold;

  WTables tables;
  for (int v = t; v <= t + 2; ++v) tables.w2.values.push_back(v);
  for (int k = 1; k <= T - 1; ++k) tables.w1.values.push_back(T + k);

  if (!spec.counts) {
    tables.w2.masses.assign(3, 1.0);
    tables.w1.masses.assign(static_cast<std::size_t>(T - 1), 1.0);
  } else {
    const WHistogramCounts& c = *spec.counts;
    if (c.m.size() != static_cast<std::size_t>(T - 1))
      throw std::domain_error("build_w_histograms: need m_1..m_{T-1}");
    tables.w2.masses = {c.a1, c.a2, c.a3};
    tables.w1.masses.resize(c.m.size());
    for (int k = 1; k <= T - 1; ++k) {
      double mass = c.m[static_cast<std::size_t>(k - 1)];
      if (k == t - 1) mass -= c.a1;
      if (k == t) mass -= c.a2 + 1.0;
      if (k == t + 1) mass -= c.a3;
      if (mass < 0.0)
        throw std::domain_error("build_w_histograms: negative adjusted count");
      tables.w1.masses[static_cast<std::size_t>(k - 1)] = mass;
    }
    for (double a : tables.w2.masses)
      if (a < 0.0) throw std::domain_error("build_w_histograms: negative count");
    double total = 0.0;
    for (double v : tables.w1.masses) total += v;
    for (double v : tables.w2.masses) total += v;
    const double expect = static_cast<double>(spec.population - 2);
    if (std::fabs(total - expect) > 1e-9 * std::max(1.0, expect))
      throw std::domain_error("build_w_histograms: counts must total n - 2");
  }

  auto finish = [](DiscreteDistribution& d) {
    d.total = 0.0;
    for (double m : d.masses) d.total += m;
  };
  finish(tables.w1);
  finish(tables.w2);
  tables.w.values = tables.w2.values;
  tables.w.masses = tables.w2.masses;
  tables.w.values.insert(tables.w.values.end(), tables.w1.values.begin(),
                         tables.w1.values.end());
  tables.w.masses.insert(tables.w.masses.end(), tables.w1.masses.begin(),
                         tables.w1.masses.end());
  finish(tables.w);
  return tables;
}

// Number of W2-distributed draws in a Y2 trial; the remaining n - 2 - a
// draws follow W1. Proportional to the table masses.
inline std::size_t y2_adjacent_draws(const SimulationSpec& spec, const WTables& tables) {
  const double n2 = static_cast<double>(spec.population - 2);
  if (tables.w.total <= 0.0)
    throw std::domain_error("simulation: W histogram has zero mass");
  const double a = n2 * tables.w2.total / tables.w.total;
  return static_cast<std::size_t>(std::llround(a));
}

// Y1 = min{ T, min{W + X}_{n-2} } with X ~ Laplace(0, (T-1)/eps). Each entry
// of the returned list is one trial. With clamp_below_one set, values below
// 1 are mapped to 1 after the min (the post-processing used when reporting
// Laplace-mode distances).
inline std::vector<double> simulate_y1(const SimulationSpec& spec, RngStream& rng,
                                       bool clamp_below_one = false) {
  detail::validate_spec(spec);
  if (!(spec.eps > 0.0)) throw std::domain_error("simulate_y1: eps must be > 0");
  const WTables tables = build_w_histograms(spec);
  const double scale = static_cast<double>(spec.threshold - 1) / spec.eps;
  const std::size_t width = spec.population - 2;

  std::vector<double> samples;
  samples.reserve(spec.repeats);
  for (std::size_t r = 0; r < spec.repeats; ++r) {
    RngStream trial = rng.derive(r);
    double best = static_cast<double>(spec.threshold);
    for (std::size_t i = 0; i < width; ++i) {
      const double x = tables.w.sample(trial) + trial.laplace(scale);
      if (x < best) best = x;
    }
    if (clamp_below_one && best < 1.0) best = 1.0;
    samples.push_back(best);
  }
  return samples;
}

// Y2 = min{ T, min{W1 + X1}_m, min{W2 + X2}_a }. X1 is 0 with probability
// 1 - ((T-2)/(T-1)) p and otherwise uniform on [1-T, -1]; X2 mirrors it on
// [1, T-1]; p = T/(e^eps + T - 1).
inline std::vector<double> simulate_y2(const SimulationSpec& spec, RngStream& rng) {
  detail::validate_spec(spec);
  if (!(spec.eps > 0.0)) throw std::domain_error("simulate_y2: eps must be > 0");
  const WTables tables = build_w_histograms(spec);
  const int T = spec.threshold;
  const double p = static_cast<double>(T) /
                   (std::exp(spec.eps) + static_cast<double>(T) - 1.0);
  const double q = p * static_cast<double>(T - 2) / static_cast<double>(T - 1);
  const std::size_t a = y2_adjacent_draws(spec, tables);
  const std::size_t m = spec.population - 2 - a;

  std::vector<double> samples;
  samples.reserve(spec.repeats);
  for (std::size_t r = 0; r < spec.repeats; ++r) {
    RngStream trial = rng.derive(r);
    double best = static_cast<double>(T);
    for (std::size_t i = 0; i < m; ++i) {
      double x = tables.w1.sample(trial);
      if (trial.bernoulli(q))
        x += static_cast<double>(trial.uniform_int(1 - T, -1));
      if (x < best) best = x;
    }
    for (std::size_t i = 0; i < a; ++i) {
      double x = tables.w2.sample(trial);
      if (trial.bernoulli(q))
        x += static_cast<double>(trial.uniform_int(1, T - 1));
      if (x < best) best = x;
    }
    samples.push_back(best);
  }
  return samples;
}

enum class MinLaplaceMethod { kExactSeries, kMonteCarlo, kLogClosedForm };

struct MinLaplaceResult {
  double value = 0.0;
  double std_error = 0.0;  // Monte Carlo only
};

// E[min of n i.i.d. Laplace(0, b)].
//   ExactSeries:     b/(n 2^n) - b * sum_{k=1..n} C(n,k) (-1)^{k+1} / (k 2^k),
//                    from direct integration of the order statistic.
//   LogClosedForm: b * ln(1/2 - 1/(n+1)); reported for comparison, it
//                    disagrees with the direct integration (see README).
//   MonteCarlo:      sample mean with its standard error.
inline MinLaplaceResult min_laplace_expectation(std::size_t n, double b,
                                                MinLaplaceMethod method,
                                                RngStream& rng,
                                                std::size_t draws = 1000000) {
  if (n == 0) throw std::domain_error("min_laplace_expectation: n must be >= 1");
  if (!(b > 0.0)) throw std::domain_error("min_laplace_expectation: b must be > 0");
  MinLaplaceResult result;
  switch (method) {
    case MinLaplaceMethod::kExactSeries: {
      // Alternating binomial sum; long double keeps n <= 64 well-conditioned.
      if (n > 64)
        throw std::domain_error(
            "min_laplace_expectation: ExactSeries limited to n <= 64");
      long double sum = 0.0L;
      long double binom = 1.0L;  // C(n, k), updated incrementally
      long double pow2 = 1.0L;   // 2^k
      for (std::size_t k = 1; k <= n; ++k) {
        binom = binom * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
        pow2 *= 2.0L;
        const long double term = binom / (static_cast<long double>(k) * pow2);
        sum += (k % 2 == 1) ? term : -term;
      }
      const long double lead = 1.0L / (static_cast<long double>(n) * pow2);
      result.value = static_cast<double>(b * (lead - sum));
      return result;
    }
    case MinLaplaceMethod::kLogClosedForm: {
      if (n < 2)
        throw std::domain_error(
            "min_laplace_expectation: closed form stated for n > 1");
      result.value = b * std::log(0.5 - 1.0 / (static_cast<double>(n) + 1.0));
      return result;
    }
    case MinLaplaceMethod::kMonteCarlo: {
      if (draws == 0) throw std::domain_error("min_laplace_expectation: draws must be > 0");
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t r = 0; r < draws; ++r) {
        double best = rng.laplace(b);
        for (std::size_t i = 1; i < n; ++i) best = std::min(best, rng.laplace(b));
        sum += best;
        sum_sq += best * best;
      }
      const double mean = sum / static_cast<double>(draws);
      const double var =
          (sum_sq - sum * sum / static_cast<double>(draws)) / static_cast<double>(draws - 1);
      result.value = mean;
      result.std_error = std::sqrt(var / static_cast<double>(draws));
      return result;
    }
  }
  throw std::domain_error("min_laplace_expectation: unknown method");
}

struct SampleSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
};

inline SampleSummary summarize(std::vector<double> samples) {
  if (samples.empty()) throw std::domain_error("summarize: empty sample list");
  SampleSummary s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double v : samples) ss += (v - s.mean) * (v - s.mean);
  s.stddev = samples.size() > 1
                 ? std::sqrt(ss / static_cast<double>(samples.size() - 1))
                 : 0.0;
  std::sort(samples.begin(), samples.end());
  auto quantile = [&](double q) {
    const double idx = q * static_cast<double>(samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return samples[lo] * (1.0 - frac) + samples[hi] * frac;
  };
  s.p5 = quantile(0.05);
  s.p95 = quantile(0.95);
  return s;
}

}  // namespace ldq
