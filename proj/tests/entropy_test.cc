// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/entropy.h"

#include <gtest/gtest.h>

#include <numeric>

#include "pbc/dp.h"
#include "pbc/extract.h"
#include "test_support.h"

namespace pbc {
namespace {

using testing::Rng;
using testing::Uniform;

ResidualSummary SummaryOf(std::string_view bytes, std::uint64_t records) {
  ResidualSummary s;
  s.records = records;
  s.bytes = bytes.size();
  for (unsigned char c : bytes) ++s.histogram[c];
  return s;
}

TEST(ResidualEntropyTest, Examples) {
  EXPECT_DOUBLE_EQ(ResidualEntropy(SummaryOf("abcd", 1)), 2.0);
  EXPECT_DOUBLE_EQ(ResidualEntropy(SummaryOf("aaaa", 1)), 0.0);
  EXPECT_DOUBLE_EQ(ResidualEntropy(SummaryOf("", 3)), 0.0);
  EXPECT_DOUBLE_EQ(ResidualEntropy(SummaryOf("aabb", 1)), 1.0);
}

TEST(ResidualEntropyTest, MatchesReference) {
  Rng rng(6);
  for (int iter = 0; iter < 200; ++iter) {
    const std::string s = testing::RandomText(rng, Uniform(rng, 1, 200), "abcdefgh01");
    std::map<unsigned char, std::uint64_t> hist;
    for (unsigned char c : s) ++hist[c];
    EXPECT_NEAR(ResidualEntropy(SummaryOf(s, 1)), testing::RefEntropy(hist), 1e-9);
  }
}

TEST(EntropyStatsTest, NormalizationInvariants) {
  Rng rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<ResidualSummary> clusters(Uniform(rng, 1, 6));
    for (auto& c : clusters) c = SummaryOf(testing::RandomText(rng, Uniform(rng, 0, 30), "xyz12"), Uniform(rng, 1, 9));
    const EntropyStats s = EntropyFromSummaries(clusters);
    EXPECT_NEAR(std::accumulate(s.shares.begin(), s.shares.end(), 0.0), 1.0, 1e-12);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const double sum = std::accumulate(s.frequencies[i].begin(), s.frequencies[i].end(), 0.0);
      EXPECT_NEAR(sum, clusters[i].bytes == 0 ? 0.0 : 1.0, 1e-12);
      EXPECT_LE(s.residual_entropies[i], std::log2(std::max<std::size_t>(1, s.alphabet_sizes[i])) + 1e-12);
    }
    EXPECT_GE(s.pattern_entropy, 0);
    EXPECT_LE(s.pattern_entropy, std::log2(static_cast<double>(clusters.size())) + 1e-12);
  }
}

TEST(EntropyStatsTest, TwoEqualClusters) {
  const std::vector<ResidualSummary> clusters = {SummaryOf("ab", 2), SummaryOf("cd", 2)};
  const EntropyStats s = EntropyFromSummaries(clusters);
  EXPECT_DOUBLE_EQ(s.pattern_entropy, 1.0);
  EXPECT_DOUBLE_EQ(s.residual_entropy, 1.0);
  EXPECT_DOUBLE_EQ(s.mean_residual_length, 1.0);
  EXPECT_DOUBLE_EQ(s.total(), 2.0);
}

// Merging summaries through the traceback's dropped literals agrees with
// re-extracting the residuals under the merged pattern.
TEST(MergeSummariesTest, MatchesReExtraction) {
  Rng rng(15);
  for (int iter = 0; iter < 300; ++iter) {
    const std::vector<std::string> records = {testing::RandomText(rng, Uniform(rng, 1, 12), "abc1"),
                                              testing::RandomText(rng, Uniform(rng, 1, 12), "abc1")};
    const std::vector<std::uint64_t> mult = {Uniform(rng, 1, 4), Uniform(rng, 1, 4)};
    const auto m = MinElIncrementFast(SymbolsFromBytes(records[0]), SymbolsFromBytes(records[1]), mult[0], mult[1]);
    const auto merged = MergeSummaries(SummaryOf("", mult[0]), SummaryOf("", mult[1]), m.dropped_x, m.dropped_y);
    Cluster c;
    c.members = {0, 1};
    c.pattern = m.merged;
    c.size = mult[0] + mult[1];
    const auto direct = SummarizeResiduals(c, records, mult);
    EXPECT_EQ(merged.records, direct.records);
    EXPECT_EQ(merged.bytes, direct.bytes);
    EXPECT_EQ(merged.histogram, direct.histogram);
  }
}

TEST(EntropyDeltaTest, IdenticalPatternsDoNotIncreaseEntropy) {
  Agglomerator agg({"abc", "abc", "xyz"}, {});
  EXPECT_LE(agg.CriterionDelta(MergeCriterion::kEntropy, 0, 1), 0.0);
  EXPECT_EQ(agg.CriterionDelta(MergeCriterion::kEncodingLength, 0, 1), 0.0);
  EXPECT_EQ(agg.CriterionDelta(MergeCriterion::kEditDistance, 0, 1), 0.0);
}

// The incremental delta equals the difference of two full recomputations.
TEST(EntropyDeltaTest, MatchesFullRecomputation) {
  Rng rng(21);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<std::string> records;
    for (int i = 0; i < 6; ++i) records.push_back("k=" + testing::RandomText(rng, Uniform(rng, 1, 5), "ab12") + ";");
    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    if (records.size() < 3) continue;
    Agglomerator agg(records, {});
    agg.Merge(0, 1);
    const auto before = EntropyOfClustering(agg.ActiveClusters(), records, agg.multiplicity()).total();
    const double delta = agg.CriterionDelta(MergeCriterion::kEntropy, 0, 2);
    agg.Merge(0, 2);
    const auto after = EntropyOfClustering(agg.ActiveClusters(), records, agg.multiplicity()).total();
    EXPECT_NEAR(delta, after - before, 1e-9);
  }
}

}  // namespace
}  // namespace pbc
