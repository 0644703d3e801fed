#include "ldq/simulation.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ldq/rng.hpp"

namespace {

using ldq::MinLaplaceMethod;
using ldq::RngStream;
using ldq::SimulationSpec;
using ldq::WHistogramCounts;

// Independent oracle for E[min of n i.i.d. Laplace(0, b)]: Simpson quadrature
// of the survival-function representation
//   E[min] = int_0^inf (e^{-x/b}/2)^n dx - int_0^inf 1-(1-e^{-x/b}/2)^n dx.
double min_laplace_quadrature(std::size_t n, double b) {
  const double hi = 80.0 * b;
  const int steps = 200000;  // even
  const double h = hi / steps;
  auto f = [&](double x) {
    const double u = 0.5 * std::exp(-x / b);
    return std::pow(u, static_cast<double>(n)) -
           (1.0 - std::pow(1.0 - u, static_cast<double>(n)));
  };
  double sum = f(0.0) + f(hi);
  for (int i = 1; i < steps; ++i) sum += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

SimulationSpec degenerate_at_t(std::size_t n, int t, int T) {
  // All W mass on value t: a1 = n-2, m_{t-1} = a1, m_t = a2 + 1 = 1.
  SimulationSpec spec;
  spec.population = n;
  spec.true_distance = t;
  spec.threshold = T;
  WHistogramCounts counts;
  counts.a1 = static_cast<double>(n - 2);
  counts.m.assign(static_cast<std::size_t>(T - 1), 0.0);
  counts.m[static_cast<std::size_t>(t - 2)] = counts.a1;  // m_{t-1}
  counts.m[static_cast<std::size_t>(t - 1)] = 1.0;        // m_t
  spec.counts = counts;
  return spec;
}

TEST(BuildWHistograms, UniformModeSupportAndMasses) {
  SimulationSpec spec;  // defaults: n=10000, t=4, T=6, uniform
  const auto tables = ldq::build_w_histograms(spec);
  EXPECT_EQ(tables.w.values,
            (std::vector<double>{4, 5, 6, 7, 8, 9, 10, 11}));
  for (double m : tables.w.masses) EXPECT_DOUBLE_EQ(m, 1.0);
  EXPECT_DOUBLE_EQ(tables.w.total, 8.0);
  EXPECT_EQ(tables.w2.values, (std::vector<double>{4, 5, 6}));
  EXPECT_EQ(tables.w1.values, (std::vector<double>{7, 8, 9, 10, 11}));
  // W2 : W1 mass split 3 : 5 over n-2 draws.
  EXPECT_EQ(ldq::y2_adjacent_draws(spec, tables), 3749u);
}

TEST(BuildWHistograms, ExplicitCountsTableConstruction) {
  // t=3, T=6, a=(1,1,1), all m_k = 2 -> n-2 = 9.
  SimulationSpec spec;
  spec.population = 11;
  spec.true_distance = 3;
  spec.threshold = 6;
  WHistogramCounts counts;
  counts.a1 = counts.a2 = counts.a3 = 1.0;
  counts.m = {2, 2, 2, 2, 2};
  spec.counts = counts;
  const auto tables = ldq::build_w_histograms(spec);
  EXPECT_EQ(tables.w2.values, (std::vector<double>{3, 4, 5}));
  EXPECT_EQ(tables.w2.masses, (std::vector<double>{1, 1, 1}));
  // W1 rows: m1, m2-a1, m3-a2-1, m4-a3, m5 = 2, 1, 0, 1, 2.
  EXPECT_EQ(tables.w1.masses, (std::vector<double>{2, 1, 0, 1, 2}));
  EXPECT_DOUBLE_EQ(tables.w.total, 9.0);
}

TEST(BuildWHistograms, NegativeAdjustedCountIsDomainError) {
  // a2 = 0 with m_t = 0 makes the T+t row negative.
  SimulationSpec spec;
  spec.population = 10;
  spec.true_distance = 3;
  spec.threshold = 6;
  WHistogramCounts counts;
  counts.a1 = 4.0;
  counts.m = {2, 4, 0, 2, 0};
  spec.counts = counts;
  EXPECT_THROW(ldq::build_w_histograms(spec), std::domain_error);
}

TEST(BuildWHistograms, CountTotalsMustMatchPopulation) {
  SimulationSpec spec;
  spec.population = 50;
  spec.true_distance = 3;
  spec.threshold = 6;
  WHistogramCounts counts;
  counts.a1 = 1.0;
  counts.m = {2, 2, 2, 2, 2};  // totals nowhere near 48
  spec.counts = counts;
  EXPECT_THROW(ldq::build_w_histograms(spec), std::domain_error);
}

TEST(BuildWHistograms, ValidatesSpecShape) {
  SimulationSpec spec;
  spec.true_distance = 5;  // > T - 2
  EXPECT_THROW(ldq::build_w_histograms(spec), std::domain_error);
  spec.true_distance = 1;  // neighbor pair
  EXPECT_THROW(ldq::build_w_histograms(spec), std::domain_error);
}

TEST(SimulateY1, SamplesNeverExceedThreshold) {
  SimulationSpec spec;
  spec.population = 500;
  spec.repeats = 200;
  spec.eps = 2.0;
  RngStream rng(1);
  for (double v : ldq::simulate_y1(spec, rng)) ASSERT_LE(v, 6.0);
}

TEST(SimulateY1, DegenerateWAtLargeBudgetConvergesToTrueDistance) {
  SimulationSpec spec = degenerate_at_t(2000, 4, 6);
  spec.repeats = 200;
  spec.eps = 1e6;
  RngStream rng(2);
  const auto summary = ldq::summarize(ldq::simulate_y1(spec, rng));
  EXPECT_NEAR(summary.mean, 4.0, 0.01);
}

TEST(SimulateY1, ClampVariantFloorsAtOne) {
  SimulationSpec spec;
  spec.population = 2000;
  spec.repeats = 100;
  spec.eps = 1.0;  // scale 5: the min over 1998 draws is deeply negative
  RngStream raw_rng(3), clamp_rng(3);
  const auto raw = ldq::simulate_y1(spec, raw_rng, false);
  const auto clamped = ldq::simulate_y1(spec, clamp_rng, true);
  bool saw_below_one = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    ASSERT_GE(clamped[i], 1.0);
    if (raw[i] < 1.0) {
      saw_below_one = true;
      ASSERT_DOUBLE_EQ(clamped[i], 1.0);
    }
  }
  EXPECT_TRUE(saw_below_one);
}

TEST(SimulateY2, SamplesNeverExceedThresholdAndRespectSupportFloor) {
  SimulationSpec spec;
  spec.population = 500;
  spec.repeats = 200;
  spec.eps = 1.0;
  RngStream rng(4);
  // Minimum possible value: (T+1) + (1-T) = 2.
  for (double v : ldq::simulate_y2(spec, rng)) {
    ASSERT_LE(v, 6.0);
    ASSERT_GE(v, 2.0);
  }
}

TEST(SimulateY2, DegenerateMixtureAtLargeBudgetEqualsTrueDistance) {
  SimulationSpec spec = degenerate_at_t(2000, 4, 6);
  spec.repeats = 100;
  spec.eps = 40.0;  // p ~ 2e-17: X1 = X2 = 0 almost surely
  RngStream rng(5);
  for (double v : ldq::simulate_y2(spec, rng)) ASSERT_DOUBLE_EQ(v, 4.0);
}

TEST(SimulateY2, MeanMonotoneNonIncreasingInResampleProbability) {
  // Larger eps -> smaller p -> the min can only move up.
  SimulationSpec spec;
  spec.population = 2000;
  spec.repeats = 3000;
  double prev = -1.0;
  for (double eps : {1.0, 2.0, 4.0, 6.0, 8.0, 10.0}) {
    spec.eps = eps;
    RngStream rng(6);
    const double mean = ldq::summarize(ldq::simulate_y2(spec, rng)).mean;
    EXPECT_GE(mean, prev - 0.03) << "eps=" << eps;  // Monte Carlo slack
    prev = mean;
  }
}

TEST(MinLaplace, SingleDrawHasZeroMean) {
  RngStream rng(7);
  EXPECT_DOUBLE_EQ(
      ldq::min_laplace_expectation(1, 2.0, MinLaplaceMethod::kExactSeries, rng).value,
      0.0);
}

TEST(MinLaplace, TwoDrawClosedForms) {
  RngStream rng(8);
  EXPECT_NEAR(
      ldq::min_laplace_expectation(2, 1.0, MinLaplaceMethod::kExactSeries, rng).value,
      -0.75, 1e-12);
  EXPECT_NEAR(
      ldq::min_laplace_expectation(2, 1.0, MinLaplaceMethod::kLogClosedForm, rng).value,
      std::log(1.0 / 6.0), 1e-12);
}

TEST(MinLaplace, ExactSeriesMatchesQuadratureOracle) {
  RngStream rng(9);
  for (std::size_t n : {2, 3, 5, 10, 20}) {
    const double series =
        ldq::min_laplace_expectation(n, 1.0, MinLaplaceMethod::kExactSeries, rng).value;
    EXPECT_NEAR(series, min_laplace_quadrature(n, 1.0), 1e-6) << "n=" << n;
  }
}

TEST(MinLaplace, ExactSeriesMatchesMonteCarloWithinThreeSigma) {
  RngStream rng(10);
  for (std::size_t n : {2, 3, 5, 10}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const double series =
          ldq::min_laplace_expectation(n, b, MinLaplaceMethod::kExactSeries, rng).value;
      const auto mc = ldq::min_laplace_expectation(
          n, b, MinLaplaceMethod::kMonteCarlo, rng, 200000);
      EXPECT_NEAR(mc.value, series, 3.0 * mc.std_error) << "n=" << n << " b=" << b;
    }
  }
}

TEST(MinLaplace, DomainChecks) {
  RngStream rng(11);
  EXPECT_THROW(ldq::min_laplace_expectation(0, 1.0, MinLaplaceMethod::kExactSeries, rng),
               std::domain_error);
  EXPECT_THROW(ldq::min_laplace_expectation(2, 0.0, MinLaplaceMethod::kExactSeries, rng),
               std::domain_error);
  EXPECT_THROW(
      ldq::min_laplace_expectation(100, 1.0, MinLaplaceMethod::kExactSeries, rng),
      std::domain_error);
  EXPECT_THROW(
      ldq::min_laplace_expectation(1, 1.0, MinLaplaceMethod::kLogClosedForm, rng),
      std::domain_error);
}

TEST(Summarize, MomentsAndQuantiles) {
  const auto s = ldq::summarize({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_NEAR(s.stddev, std::sqrt(2.5), 1e-12);
  EXPECT_GE(s.p95, s.p5);
  EXPECT_THROW(ldq::summarize({}), std::domain_error);
}

}  // namespace
