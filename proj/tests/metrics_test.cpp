#include "ldq/metrics.hpp"

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "ldq/distance.hpp"
#include "ldq/gen.hpp"
#include "ldq/rng.hpp"
#include "test_util.hpp"

namespace {

using ldq::DistanceMatrix;
using ldq::UnreachablePolicy;

DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix m(rows.size());
  for (std::size_t u = 0; u < rows.size(); ++u)
    for (std::size_t v = 0; v < rows.size(); ++v) m.at(u, v) = rows[u][v];
  return m;
}

TEST(Rmae, ZeroOnIdenticalMatrices) {
  const auto truth = ldq::exact_all_pairs(ldq_test::make_path(5));
  EXPECT_DOUBLE_EQ(ldq::rmae(truth, truth, 6.0), 0.0);
  EXPECT_DOUBLE_EQ(ldq::mre(truth, truth, 6.0), 0.0);
}

TEST(Rmae, HandEvaluatedTwoEntryCase) {
  // Ordered pair truths {1, 2}, both noisy values 2: (1/1 + 0/2) / 2 = 0.5.
  const auto truth = from_rows({{0, 1}, {2, 0}});
  const auto noisy = from_rows({{0, 2}, {2, 0}});
  EXPECT_DOUBLE_EQ(ldq::rmae(truth, noisy, 6.0), 0.5);
}

TEST(Rmae, DoublingEveryDistanceGivesExactlyOne) {
  const auto truth = ldq::exact_all_pairs(ldq_test::make_path(6));
  DistanceMatrix noisy = truth;
  for (double& v : noisy.entries()) v *= 2.0;
  EXPECT_DOUBLE_EQ(ldq::rmae(truth, noisy, 12.0), 1.0);
}

TEST(Rmae, ZeroOffDiagonalTruthIsDomainError) {
  const auto truth = from_rows({{0, 0}, {1, 0}});
  const auto noisy = from_rows({{0, 1}, {1, 0}});
  EXPECT_THROW(ldq::rmae(truth, noisy, 6.0), std::domain_error);
}

TEST(Mre, HandEvaluatedMeansCase) {
  // Means 1.5 vs 2.0 -> 0.5/1.5 = 1/3.
  const auto truth = from_rows({{0, 1}, {2, 0}});
  const auto noisy = from_rows({{0, 2}, {2, 0}});
  EXPECT_NEAR(ldq::mre(truth, noisy, 6.0), 1.0 / 3.0, 1e-12);
}

TEST(Mre, InvariantUnderPermutationOfNoisyEntries) {
  ldq::RngStream rng(5);
  const ldq::Graph g = ldq::gen::gnp(12, 0.4, rng);
  const auto truth = ldq::exact_all_pairs(g, 6.0);
  DistanceMatrix noisy = truth;
  // Swap a handful of off-diagonal noisy entries; the mean is unchanged.
  std::swap(noisy.at(0, 1), noisy.at(2, 3));
  std::swap(noisy.at(4, 5), noisy.at(1, 0));
  EXPECT_DOUBLE_EQ(ldq::mre(truth, noisy, 6.0), 0.0);
}

TEST(Metrics, UnreachablePolicyCapVersusExclude) {
  // 4 vertices, two components: pairs across components are unreachable.
  const auto g = ldq::Graph::from_edges(4, {{0, 1}, {2, 3}});
  const auto truth = ldq::exact_all_pairs(g);  // marker entries
  auto noisy = ldq::exact_all_pairs(g, 6.0);   // capped at 6 by construction

  const auto capped = ldq::compute_metrics(truth, noisy, 6.0, UnreachablePolicy::kCap);
  EXPECT_EQ(capped.pair_count, 12u);
  EXPECT_DOUBLE_EQ(capped.rmae, 0.0);  // cap substitution matches the noisy side

  const auto excluded =
      ldq::compute_metrics(truth, noisy, 6.0, UnreachablePolicy::kExclude);
  EXPECT_EQ(excluded.pair_count, 4u);  // only the two real edges, both directions
  EXPECT_DOUBLE_EQ(excluded.rmae, 0.0);
  EXPECT_EQ(excluded.policy, UnreachablePolicy::kExclude);
}

TEST(Metrics, NoisyUnreachableEntriesFollowCapConvention) {
  const auto truth = from_rows({{0, 2}, {2, 0}});
  auto noisy = from_rows({{0, 2}, {2, 0}});
  noisy.at(0, 1) = DistanceMatrix::kUnreachable;
  EXPECT_DOUBLE_EQ(ldq::rmae(truth, noisy, 6.0), (6.0 - 2.0) / 2.0 / 2.0);
}

TEST(Metrics, RmaeZeroIffEntrywiseEqual) {
  ldq::RngStream rng(6);
  const ldq::Graph g = ldq::gen::gnp(10, 0.5, rng);
  const auto truth = ldq::exact_all_pairs(g, 6.0);
  DistanceMatrix noisy = truth;
  noisy.at(3, 4) += 1.0;
  EXPECT_GT(ldq::rmae(truth, noisy, 6.0), 0.0);
}

TEST(Metrics, DimensionAndDiagonalChecks) {
  const auto a = from_rows({{0, 1}, {1, 0}});
  DistanceMatrix b(3, 1.0);
  EXPECT_THROW(ldq::rmae(a, b, 6.0), std::domain_error);
  const auto bad_diag = from_rows({{1, 1}, {1, 0}});
  EXPECT_THROW(ldq::rmae(bad_diag, a, 6.0), std::domain_error);
  EXPECT_THROW(ldq::rmae(a, a, 0.0), std::domain_error);
}

}  // namespace
