#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "maxvol/maxvol.hpp"
#include "oracle.hpp"

using maxvol::ColumnSelection;
using maxvol::DenseMatrix;

namespace {

std::vector<std::size_t> vec(const ColumnSelection& s) { return {s.begin(), s.end()}; }

/// Exhaustive 1-swap check written against the Gram oracle.
bool no_improving_swap(const DenseMatrix& a, const ColumnSelection& s, double mu) {
  const double v = oracle::gram_volume(a, vec(s));
  for (std::size_t out = 0; out < s.k(); ++out)
    for (std::size_t in = 0; in < a.cols(); ++in) {
      if (s.contains(in)) continue;
      auto t = vec(s);
      t[out] = in;
      std::sort(t.begin(), t.end());
      if (oracle::gram_volume(a, t) > mu * v * (1 + 1e-9)) return false;
    }
  return true;
}

}  // namespace

TEST(Greedy, ThreeVectors) {
  const auto r = maxvol::greedy_select(oracle::three_vectors(), 2);
  EXPECT_EQ(r.pick_order, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(vec(r.selection), (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(r.volume.volume, 1.0);
  EXPECT_EQ(r.strategy, maxvol::Strategy::greedy);
}

TEST(Greedy, Identity) {
  const auto r = maxvol::greedy_select(DenseMatrix::identity(4), 4);
  EXPECT_DOUBLE_EQ(r.volume.volume, 1.0);
  EXPECT_EQ(r.selection.k(), 4u);
}

TEST(Greedy, PicksLargestResidual) {
  const auto a = DenseMatrix::from_rows({{1.0, 3.0, 0.0}, {0.0, 0.0, 2.0}});
  const auto r = maxvol::greedy_select(a, 2);
  EXPECT_EQ(r.pick_order, (std::vector<std::size_t>{1, 2}));
  EXPECT_NEAR(r.volume.volume, 6.0, 1e-12);
}

TEST(Greedy, RankDeficient) {
  const auto a = DenseMatrix::from_rows({{1.0, 2.0, -1.0}, {1.0, 2.0, -1.0}});
  EXPECT_THROW(maxvol::greedy_select(a, 2), maxvol::RankDeficient);
  EXPECT_THROW(maxvol::greedy_select(a, 0), maxvol::InvalidArgument);
  EXPECT_THROW(maxvol::greedy_select(a, 4), maxvol::InvalidArgument);
}

TEST(Exact, ThreeVectors) {
  const auto r = maxvol::exact_select(oracle::three_vectors(), 2);
  EXPECT_EQ(vec(r.selection), (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(r.volume.volume, 1.0);
}

TEST(Exact, IdentityAnyK) {
  for (std::size_t k = 1; k <= 5; ++k)
    EXPECT_DOUBLE_EQ(maxvol::exact_select(DenseMatrix::identity(5), k).volume.volume, 1.0);
}

TEST(Exact, TiesGoToLexicographicallySmallest) {
  const auto r = maxvol::exact_select(DenseMatrix::identity(4), 2);
  EXPECT_EQ(vec(r.selection), (std::vector<std::size_t>{0, 1}));
}

TEST(Exact, CapExceeded) {
  EXPECT_THROW(maxvol::exact_select(DenseMatrix::identity(30), 15), maxvol::CapExceeded);
  EXPECT_THROW(maxvol::exact_select(DenseMatrix::identity(6), 3, 19), maxvol::CapExceeded);
}

TEST(Exact, MatchesOracle) {
  maxvol::Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto a = maxvol::random_gaussian_matrix(5, 7, rng);
    const std::size_t k = 1 + t % 5;
    const double ref = oracle::max_volume(a, k);
    EXPECT_NEAR(maxvol::exact_select(a, k).volume.volume, ref, 1e-10 * ref);
  }
}

TEST(Exact, DominatesGreedyAndLocal) {
  maxvol::Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto a = maxvol::random_gaussian_matrix(6, 8, rng);
    const std::size_t k = 3;
    const double ex = maxvol::exact_select(a, k).volume.volume;
    const auto gr = maxvol::greedy_select(a, k);
    EXPECT_GE(ex * (1 + 1e-12), gr.volume.volume);
    for (double mu : {1.0, 1.5}) {
      const auto lo = maxvol::local_search(a, k, mu, gr.selection);
      EXPECT_GE(ex * (1 + 1e-12), lo.volume.volume);
    }
  }
}

TEST(GreedyProperty, RatioAgainstOracle) {
  maxvol::Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 4 + rng.below(7);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(6, n));
    const auto a = maxvol::random_gaussian_matrix(n, n, rng);
    const double g = maxvol::greedy_select(a, k).volume.volume;
    EXPECT_GE(g, oracle::max_volume(a, k) / std::tgamma(k + 1.0) - 1e-12) << "n=" << n << " k=" << k;
  }
}

TEST(LocalSearch, FromOptimumMakesNoSwaps) {
  const auto a = oracle::three_vectors();
  const auto r = maxvol::local_search(a, 2, 1.0, ColumnSelection({0, 1}));
  EXPECT_EQ(r.swaps_or_steps, 0u);
  EXPECT_EQ(vec(r.selection), (std::vector<std::size_t>{0, 1}));
}

TEST(LocalSearch, ThreeVectorsImproves) {
  const auto a = oracle::three_vectors();
  const auto r = maxvol::local_search(a, 2, 1.0, ColumnSelection({0, 2}));
  EXPECT_NEAR(r.volume.volume, 1.0, 1e-15);
  EXPECT_EQ(r.swaps_or_steps, 1u);
  EXPECT_EQ(r.mu, 1.0);
}

TEST(LocalSearch, ZeroVolumeStartAndBadMu) {
  const auto a = DenseMatrix::from_rows({{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  EXPECT_THROW(maxvol::local_search(a, 2, 1.0, ColumnSelection({0, 1})), maxvol::InvalidArgument);
  EXPECT_THROW(maxvol::local_search(a, 2, 0.5, ColumnSelection({0, 2})), maxvol::InvalidArgument);
  EXPECT_THROW(maxvol::local_search(a, 2, 1.0, ColumnSelection({0})), maxvol::InvalidArgument);
}

TEST(LocalSearch, TerminatesAtLocalMaximum) {
  maxvol::Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const auto a = maxvol::random_gaussian_matrix(6, 4, rng);
    const std::size_t k = 2;
    const auto r = maxvol::local_search(a, k, 1.0, ColumnSelection({0, 1}));
    EXPECT_TRUE(maxvol::is_local_mu_maximum(a, r.selection, 1.0));
    EXPECT_TRUE(no_improving_swap(a, r.selection, 1.0));
  }
}

TEST(IsLocalMaximum, Examples) {
  const auto a = oracle::three_vectors();
  EXPECT_TRUE(maxvol::is_local_mu_maximum(a, ColumnSelection({0, 1}), 1.0));
  EXPECT_FALSE(maxvol::is_local_mu_maximum(a, ColumnSelection({0, 2}), 1.0));
  EXPECT_TRUE(maxvol::is_local_mu_maximum(a, ColumnSelection({0, 2}), 1e12));
}

TEST(Sampling, IdentityIsUniform) {
  const auto d = maxvol::volume_sampling_distribution(DenseMatrix::identity(2), 1);
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_DOUBLE_EQ(d.entries[0].second, 0.5);
  EXPECT_DOUBLE_EQ(d.entries[1].second, 0.5);
}

TEST(Sampling, ThreeVectorsDistribution) {
  const auto d = maxvol::volume_sampling_distribution(oracle::three_vectors(), 2);
  ASSERT_EQ(d.entries.size(), 3u);
  EXPECT_NEAR(d.normalizer, 2.0, 1e-15);
  EXPECT_NEAR(d.entries[0].second, 0.5, 1e-15);
  EXPECT_NEAR(d.entries[1].second, 0.18, 1e-15);
  EXPECT_NEAR(d.entries[2].second, 0.32, 1e-15);
  EXPECT_EQ(vec(d.entries[1].first), (std::vector<std::size_t>{0, 2}));
}

TEST(Sampling, ProportionalToSquaredVolume) {
  maxvol::Rng rng(25);
  const auto a = maxvol::random_gaussian_matrix(4, 6, rng);
  const auto d = maxvol::volume_sampling_distribution(a, 3);
  double total = 0.0;
  for (const auto& [s, p] : d.entries) {
    total += p;
    const double g = oracle::gram_volume(a, vec(s));
    EXPECT_NEAR(p * d.normalizer, g * g, 1e-9 * g * g);
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  const double r01 = d.entries[0].second / d.entries[1].second;
  const double g0 = oracle::gram_volume(a, vec(d.entries[0].first));
  const double g1 = oracle::gram_volume(a, vec(d.entries[1].first));
  EXPECT_NEAR(r01, g0 * g0 / (g1 * g1), 1e-9 * r01);
}

TEST(Sampling, KeepsZeroVolumeSubsets) {
  const auto a = DenseMatrix::from_rows({{1.0, 2.0, 0.0}, {0.0, 0.0, 1.0}});
  const auto d = maxvol::volume_sampling_distribution(a, 2);
  ASSERT_EQ(d.entries.size(), 3u);
  EXPECT_EQ(d.entries[0].second, 0.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    EXPECT_NE(vec(maxvol::sample_subset(d, seed)), (std::vector<std::size_t>{0, 1}));
}

TEST(Sampling, AllZeroIsRankDeficient) {
  const auto a = DenseMatrix::from_rows({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}});
  EXPECT_THROW(maxvol::volume_sampling_distribution(a, 2), maxvol::RankDeficient);
}

TEST(Sampling, PointMassAndDeterminism) {
  const auto a = DenseMatrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const auto d = maxvol::volume_sampling_distribution(a, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    EXPECT_EQ(vec(maxvol::sample_subset(d, seed)), (std::vector<std::size_t>{0, 1}));
  const auto d3 = maxvol::volume_sampling_distribution(oracle::three_vectors(), 2);
  EXPECT_EQ(maxvol::sample_subset(d3, 77), maxvol::sample_subset(d3, 77));
}

TEST(Sampling, EmpiricalFrequencies) {
  const auto d = maxvol::volume_sampling_distribution(oracle::three_vectors(), 2);
  maxvol::VolumeSampler s(d, 2024);
  const std::size_t draws = 100000;
  std::vector<std::size_t> counts(3, 0);
  for (std::size_t i = 0; i < draws; ++i) ++counts[s.draw_index()];
  for (std::size_t i = 0; i < 3; ++i) {
    const double p = d.entries[i].second;
    const double sigma = std::sqrt(draws * p * (1 - p));
    EXPECT_LE(std::fabs(counts[i] - draws * p), 3 * sigma) << "entry " << i;
  }
}

TEST(Determinism, SolversRepeatBitForBit) {
  maxvol::Rng r1(99), r2(99);
  const auto a = maxvol::random_gaussian_matrix(7, 7, r1);
  const auto b = maxvol::random_gaussian_matrix(7, 7, r2);
  const auto ga = maxvol::greedy_select(a, 3), gb = maxvol::greedy_select(b, 3);
  EXPECT_EQ(ga.selection, gb.selection);
  EXPECT_EQ(ga.volume.volume, gb.volume.volume);
  const auto ea = maxvol::exact_select(a, 3), eb = maxvol::exact_select(b, 3);
  EXPECT_EQ(ea.volume.log2_volume, eb.volume.log2_volume);
}
