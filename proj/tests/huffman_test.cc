// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/huffman.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace pbc {
namespace {

using testing::Rng;
using testing::Uniform;

double KraftSum(const HuffmanTable& t) {
  double sum = 0;
  for (auto len : t.lengths) sum += std::ldexp(1.0, -len);
  return sum;
}

TEST(HuffmanTest, UniformDistributionIsNearlyFlat) {
  std::array<std::uint64_t, kHuffmanSymbols> freq;
  freq.fill(100);
  const HuffmanTable t = HuffmanFromFrequencies(freq);
  for (auto len : t.lengths) {
    EXPECT_GE(len, 8);
    EXPECT_LE(len, 9);
  }
  EXPECT_DOUBLE_EQ(KraftSum(t), 1.0);
}

TEST(HuffmanTest, OptimalCostWithoutLengthCap) {
  Rng rng(17);
  for (int iter = 0; iter < 50; ++iter) {
    std::array<std::uint64_t, kHuffmanSymbols> freq;
    for (auto& f : freq) f = Uniform(rng, 1, 1000);
    const HuffmanTable t = HuffmanFromFrequencies(freq);
    std::uint64_t cost = 0;
    for (std::size_t s = 0; s < kHuffmanSymbols; ++s) cost += freq[s] * t.lengths[s];
    EXPECT_EQ(cost, testing::RefHuffmanCost({freq.begin(), freq.end()}));
    EXPECT_DOUBLE_EQ(KraftSum(t), 1.0);
  }
}

TEST(HuffmanTest, SkewedFrequenciesRespectLengthCap) {
  std::array<std::uint64_t, kHuffmanSymbols> freq;
  std::uint64_t f = 1;
  for (std::size_t s = 0; s < kHuffmanSymbols; ++s) {
    freq[s] = f;
    if (s < 60) f *= 2;
  }
  const HuffmanTable t = HuffmanFromFrequencies(freq);
  for (auto len : t.lengths) EXPECT_LE(len, kMaxCodeLength);
  EXPECT_NO_THROW(ValidateHuffmanTable(t));
  EXPECT_LE(KraftSum(t), 1.0);
}

TEST(HuffmanTest, RoundTripAndSelfFraming) {
  Rng rng(23);
  std::vector<std::string> payloads;
  for (int i = 0; i < 200; ++i) payloads.push_back(testing::RandomText(rng, Uniform(rng, 0, 60), "0123456789abc"));
  const HuffmanCoder coder(TrainHuffman(payloads));
  std::string stream;
  for (const auto& p : payloads) {
    const std::size_t before = stream.size();
    coder.Encode(p, stream);
    EXPECT_EQ(stream.size() - before, coder.EncodedSize(p));
  }
  // Bytes the training never saw still code thanks to smoothing.
  const std::string unseen = testing::RandomBytes(rng, 300);
  coder.Encode(unseen, stream);
  ByteReader in(stream);
  for (const auto& p : payloads) EXPECT_EQ(coder.Decode(in), p);
  EXPECT_EQ(coder.Decode(in), unseen);
  EXPECT_TRUE(in.at_end());
}

TEST(HuffmanTest, RepeatedSymbolCostsAboutOneBit) {
  const std::vector<std::string> payloads(50, std::string(1000, 'z'));
  const HuffmanCoder coder(TrainHuffman(payloads));
  EXPECT_LE(coder.EncodedSize(std::string(1000, 'z')), 130u);
}

TEST(HuffmanTest, TruncatedInputThrows) {
  const std::vector<std::string> payloads = {"hello world", "hello there"};
  const HuffmanCoder coder(TrainHuffman(payloads));
  std::string enc;
  coder.Encode("hello world hello", enc);
  for (std::size_t cut = 0; cut < enc.size(); ++cut) {
    ByteReader in(std::string_view(enc).substr(0, cut));
    try {
      const std::string out = coder.Decode(in);
      EXPECT_NE(out, "hello world hello");
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kTruncated || e.code() == ErrorCode::kMalformedPayload);
    }
  }
}

TEST(HuffmanTest, ValidateRejectsBadTables) {
  HuffmanTable zero{};
  EXPECT_THROW(ValidateHuffmanTable(zero), Error);
  HuffmanTable too_short{};
  too_short.lengths.fill(1);
  EXPECT_THROW(ValidateHuffmanTable(too_short), Error);
  HuffmanTable too_long{};
  too_long.lengths.fill(kMaxCodeLength + 1);
  EXPECT_THROW(ValidateHuffmanTable(too_long), Error);
}

}  // namespace
}  // namespace pbc
