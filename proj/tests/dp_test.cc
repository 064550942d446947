// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/dp.h"

#include <gtest/gtest.h>

#include "pbc/matcher.h"
#include "test_support.h"

namespace pbc {
namespace {

using testing::Rng;
using testing::Symbols;
using testing::Uniform;

TEST(UpdateStateTest, Examples) {
  EXPECT_EQ(UpdateState(0, CellType::kPattern, 'b', 3, 2), 8);
  EXPECT_EQ(UpdateState(10, CellType::kResidual, kWildcard, 4, 1), 6);
  EXPECT_EQ(UpdateState(5, CellType::kResidual, 'x', 2, 7), 7);
}

TEST(MinElIncrementTest, WorkedExample) {
  const auto out = MinElIncrementFast(Symbols("a"), Symbols("ab"), 3, 2);
  EXPECT_EQ(out.increment, 7);
  EXPECT_EQ(out.merged, Symbols("a*"));
  EXPECT_TRUE(out.dropped_x.empty());
  EXPECT_EQ(out.dropped_y, std::vector<std::uint8_t>{'b'});
  EXPECT_EQ(MinElIncrementOracle(Symbols("a"), Symbols("ab"), 3, 2), 7);
}

TEST(MinElIncrementTest, IdenticalStringsCostNothing) {
  const auto out = MinElIncrementFast(Symbols("abc"), Symbols("abc"), 1, 1);
  EXPECT_EQ(out.increment, 0);
  EXPECT_EQ(out.merged, Symbols("abc"));
  EXPECT_EQ(MinElIncrementOracle(Symbols("x"), Symbols("x"), 1, 1), 0);
}

TEST(MinElIncrementTest, EmptyInputThrows) {
  try {
    MinElIncrementFast({}, Symbols("a"), 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPattern);
  }
  EXPECT_THROW(MinElIncrementBounded(Symbols("a"), {}, 1, 1, std::nullopt), Error);
}

TEST(MinElIncrementTest, OracleRejectsLargeInputs) {
  const PatternString big(kOracleMaxTokens + 1, 'a');
  try {
    MinElIncrementOracle(big, Symbols("a"), 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(MinElIncrementTest, FastMatchesOracle) {
  Rng rng(2024);
  for (int iter = 0; iter < 1500; ++iter) {
    const auto x = testing::RandomPatternString(rng, 9, 0.25, Uniform(rng, 2, 5));
    const auto y = testing::RandomPatternString(rng, 9, 0.25, Uniform(rng, 2, 5));
    const auto sx = Uniform(rng, 1, 6);
    const auto sy = Uniform(rng, 1, 6);
    ASSERT_EQ(MinElIncrementFast(x, y, sx, sy).increment, MinElIncrementOracle(x, y, sx, sy))
        << "iteration " << iter;
  }
}

TEST(MinElIncrementTest, SymmetricInArguments) {
  Rng rng(77);
  for (int iter = 0; iter < 500; ++iter) {
    const auto x = testing::RandomPatternString(rng, 12, 0.2);
    const auto y = testing::RandomPatternString(rng, 12, 0.2);
    const auto sx = Uniform(rng, 1, 9);
    const auto sy = Uniform(rng, 1, 9);
    EXPECT_EQ(MinElIncrementFast(x, y, sx, sy).increment, MinElIncrementFast(y, x, sy, sx).increment);
  }
}

TEST(MinElIncrementTest, BoundedAgreesWithFast) {
  Rng rng(31);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto x = testing::RandomPatternString(rng, 30, 0.15, Uniform(rng, 2, 8));
    const auto y = testing::RandomPatternString(rng, 30, 0.15, Uniform(rng, 2, 8));
    const auto sx = Uniform(rng, 1, 20);
    const auto sy = Uniform(rng, 1, 20);
    const std::int64_t exact = MinElIncrementFast(x, y, sx, sy).increment;

    const auto unbounded = MinElIncrementBounded(x, y, sx, sy, std::nullopt);
    ASSERT_TRUE(unbounded.exact);
    ASSERT_EQ(unbounded.value, exact);

    const std::int64_t threshold = static_cast<std::int64_t>(Uniform(rng, 0, 2 * exact + 10)) - 5;
    const auto bounded = MinElIncrementBounded(x, y, sx, sy, threshold);
    if (bounded.exact) {
      ASSERT_EQ(bounded.value, exact);
    } else {
      // An abandoned run reports a lower bound that already exceeds the threshold.
      ASSERT_GT(bounded.value, threshold);
      ASSERT_LE(bounded.value, exact);
    }
    if (exact <= threshold) {
      ASSERT_TRUE(bounded.exact);
    }
  }
}

// The literals of the merged pattern are a common subsequence of both inputs'
// literals, and each side's dropped literals are the rest of its literals.
TEST(MinElIncrementTest, MergedPatternIsCommonSubsequence) {
  Rng rng(8);
  auto literals = [](const PatternString& s) {
    std::vector<Symbol> out;
    for (Symbol c : s) {
      if (c != kWildcard) out.push_back(c);
    }
    return out;
  };
  auto is_subsequence = [](const std::vector<Symbol>& sub, const std::vector<Symbol>& s) {
    std::size_t k = 0;
    for (Symbol c : s) {
      if (k < sub.size() && sub[k] == c) ++k;
    }
    return k == sub.size();
  };
  for (int iter = 0; iter < 1000; ++iter) {
    const auto x = testing::RandomPatternString(rng, 14, 0.2);
    const auto y = testing::RandomPatternString(rng, 14, 0.2);
    const auto out = MinElIncrementFast(x, y, Uniform(rng, 1, 5), Uniform(rng, 1, 5));
    const auto common = literals(out.merged);
    EXPECT_TRUE(is_subsequence(common, literals(x)));
    EXPECT_TRUE(is_subsequence(common, literals(y)));
    EXPECT_EQ(common.size() + out.dropped_x.size(), literals(x).size());
    EXPECT_EQ(common.size() + out.dropped_y.size(), literals(y).size());
    for (std::size_t i = 1; i < out.merged.size(); ++i) {
      EXPECT_FALSE(out.merged[i] == kWildcard && out.merged[i - 1] == kWildcard);
    }
  }
}

// Records that instantiate either input also match the merged pattern.
TEST(MinElIncrementTest, MergedPatternCoversBothSides) {
  Rng rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    const std::string a = testing::RandomText(rng, Uniform(rng, 1, 14), "abcd");
    const std::string b = testing::RandomText(rng, Uniform(rng, 1, 14), "abcd");
    const auto out = MinElIncrementFast(SymbolsFromBytes(a), SymbolsFromBytes(b), 1, 1);
    bool has_literal = false;
    for (Symbol c : out.merged) has_literal = has_literal || c != kWildcard;
    if (!has_literal) continue;
    CompiledPattern p(PatternFromSymbols(out.merged));
    EXPECT_TRUE(p.MatchExtract(a).has_value()) << a;
    EXPECT_TRUE(p.MatchExtract(b).has_value()) << b;
  }
}

TEST(MinElIncrementTest, NeverNegativeOnRecords) {
  Rng rng(4);
  for (int iter = 0; iter < 500; ++iter) {
    const auto x = testing::RandomPatternString(rng, 16, 0.0, 3);
    const auto y = testing::RandomPatternString(rng, 16, 0.0, 3);
    EXPECT_GE(MinElIncrementFast(x, y, Uniform(rng, 1, 4), Uniform(rng, 1, 4)).increment, 0);
  }
}

TEST(EditDistanceTest, Examples) {
  EXPECT_EQ(EditDistance(Symbols("ab3*2"), Symbols("ab*12")), 2);
  EXPECT_EQ(EditDistance(Symbols("abc"), Symbols("abc")), 0);
  EXPECT_EQ(EditDistance(Symbols(""), Symbols("abc")), 3);
  EXPECT_EQ(EditDistance(Symbols("kitten"), Symbols("sitting")), 3);
}

TEST(FillDpTableTest, CornerMatchesFast) {
  Rng rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    const auto x = testing::RandomPatternString(rng, 10, 0.2);
    const auto y = testing::RandomPatternString(rng, 10, 0.2);
    const auto t = FillDpTable(x, y, 2, 3);
    EXPECT_EQ(t.state(x.size(), y.size()), MinElIncrementFast(x, y, 2, 3).increment);
    EXPECT_EQ(t.state(0, 0), 0);
  }
}

}  // namespace
}  // namespace pbc
