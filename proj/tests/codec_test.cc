// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/codec.h"

#include <gtest/gtest.h>

#include "pbc/encoders.h"
#include "pbc/extract.h"
#include "pbc/huffman.h"
#include "pbc/synth.h"
#include "test_support.h"

namespace pbc {
namespace {

using testing::Rng;
using testing::Symbols;
using testing::Uniform;

Pattern Parse(std::string_view shape, std::vector<FieldEncoder> encoders = {}) {
  Pattern p = PatternFromSymbols(Symbols(shape));
  for (std::size_t i = 0; i < encoders.size(); ++i) p = p.WithEncoder(i, encoders[i]);
  return p;
}

PatternDictionary TradeLikeDictionary() {
  PatternDictionary d;
  d.Add(Parse("{\"s\":\"*\",\"q\":*,\"p\":*.*}",
              {FieldEncoder::Char(3), FieldEncoder::Varint(), FieldEncoder::Int(2), FieldEncoder::Int(2)}));
  d.Add(Parse("static-record"));
  d.Add(Parse("k=*"));
  return d;
}

std::size_t EscapeBound(std::size_t len) { return len + 1 + VarUIntSize(len); }

TEST(CodecTest, MatchedRecordLayout) {
  const PatternDictionary d = TradeLikeDictionary();
  const Codec codec(d);
  const std::string enc = codec.Compress("{\"s\":\"IBM\",\"q\":300,\"p\":12.05}");
  // id, flags, CHAR(3), VARINT(300), INT(2,1), INT(2,1)
  EXPECT_EQ(enc, std::string("\x01\x00IBM\xAC\x02\x0C\x05", 9));
  EXPECT_EQ(codec.Decompress(enc), "{\"s\":\"IBM\",\"q\":300,\"p\":12.05}");
}

TEST(CodecTest, ZeroFieldPatternIsJustTheId) {
  const PatternDictionary d = TradeLikeDictionary();
  const Codec codec(d);
  EXPECT_EQ(codec.Compress("static-record"), "\x02");
  EXPECT_EQ(codec.Decompress("\x02"), "static-record");
}

TEST(CodecTest, OutlierLayout) {
  const PatternDictionary d = TradeLikeDictionary();
  const Codec codec(d);
  CodecStats stats;
  const std::string enc = codec.Compress("nothing matches", &stats);
  EXPECT_EQ(enc, std::string("\x00\x0f", 2) + "nothing matches");
  EXPECT_EQ(stats.records_outlier, 1u);
  const std::string big(300, 'x');
  EXPECT_EQ(codec.Compress(big).size(), 1 + 2 + 300u);
}

TEST(CodecTest, FallsBackToEscapeWhenMatchIsLarger) {
  PatternDictionary d;
  d.Add(Parse("*z*"));
  const Codec codec(d);
  CodecStats stats;
  // Matched form would be id, flags and two empty VARCHARs: 4 bytes > 3.
  EXPECT_EQ(codec.Compress("z", &stats), std::string("\x00\x01z", 3));
  EXPECT_EQ(stats.records_outlier, 1u);
  EXPECT_EQ(stats.hits.size(), 0u);

  PatternDictionary single;
  single.Add(Parse("*z"));
  const Codec sc(single);
  // Equal sizes keep the match.
  EXPECT_EQ(sc.Compress("z"), std::string("\x01\x00\x00", 3));
}

TEST(CodecTest, UnknownIdAndBadFlags) {
  const PatternDictionary d = TradeLikeDictionary();
  const Codec codec(d);
  std::string bad;
  PutVarUInt(bad, 999);
  try {
    codec.Decompress(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownPatternId);
  }
  try {
    codec.Decompress(std::string("\x03\x02\x00", 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedPayload);
  }
  // Coded flag without a table.
  EXPECT_THROW(codec.Decompress(std::string("\x03\x01\x00", 3)), Error);
  // Trailing garbage.
  EXPECT_THROW(codec.Decompress(std::string("\x02\x00", 2)), Error);
}

TEST(CodecTest, FixedWidthIds) {
  const PatternDictionary d = TradeLikeDictionary();
  CodecOptions o;
  o.fixed_width_ids = true;
  const Codec codec(d, o);
  EXPECT_EQ(codec.Compress("static-record"), std::string("\x00\x00\x00\x02", 4));
  EXPECT_EQ(codec.Decompress(codec.Compress("k=v")), "k=v");
  EXPECT_EQ(codec.Decompress(codec.Compress("other")), "other");
}

TEST(CodecTest, RecordsAreSelfDelimiting) {
  Rng rng(8);
  const auto corpus = GenerateCorpus(SynthKind::kTemplated, 300, 4);
  ExtractOptions eo;
  eo.k = 8;
  PatternDictionary d = ExtractPatterns(std::span(corpus).first(150), eo);
  d.set_huffman(TrainHuffman(MatchedPayloads(d, corpus)));
  for (bool post : {false, true}) {
    CodecOptions o;
    o.use_postcoder = post;
    const Codec codec(d, o);
    std::string stream;
    std::vector<std::string> records = corpus;
    for (int i = 0; i < 50; ++i) records.push_back(testing::RandomBytes(rng, Uniform(rng, 0, 40)));
    for (const auto& r : records) codec.Compress(r, stream);
    ByteReader in(stream);
    for (const auto& r : records) {
      const std::size_t before = in.position();
      const CompressedRecord parsed = codec.Parse(in);
      const std::size_t after = in.position();
      ByteReader again(std::string_view(stream).substr(before, after - before));
      ASSERT_EQ(codec.Decompress(again), r);
      EXPECT_TRUE(again.at_end());
      if (parsed.is_raw()) {
        EXPECT_EQ(parsed.payload, r);
      }
    }
    EXPECT_TRUE(in.at_end());
  }
}

// Every input round-trips and never grows past the escape encoding.
TEST(CodecTest, LosslessAndBoundedOnFuzz) {
  Rng rng(99);
  const auto corpus = GenerateCorpus(SynthKind::kMixed, 200, 1);
  ExtractOptions eo;
  eo.k = 6;
  PatternDictionary d = ExtractPatterns(corpus, eo);
  d.set_huffman(TrainHuffman(MatchedPayloads(d, corpus)));
  const Codec codec(d);
  CodecStats stats;
  std::uint64_t expected_in = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    std::string r;
    switch (Uniform(rng, 0, 3)) {
      case 0: r = testing::RandomBytes(rng, Uniform(rng, 0, 200)); break;
      case 1: r = corpus[Uniform(rng, 0, corpus.size() - 1)]; break;
      case 2: {
        r = corpus[Uniform(rng, 0, corpus.size() - 1)];
        if (!r.empty()) r[Uniform(rng, 0, r.size() - 1)] = static_cast<char>(Uniform(rng, 0, 255));
        break;
      }
      default: r = "id=" + testing::RandomDigits(rng, Uniform(rng, 0, 25)) + ";name=" + testing::RandomText(rng, 3, "ab;=") + ";val=0;st=ok";
    }
    expected_in += r.size();
    const std::string enc = codec.Compress(r, &stats);
    ASSERT_LE(enc.size(), EscapeBound(r.size()));
    ASSERT_EQ(codec.Decompress(enc), r);
  }
  EXPECT_EQ(stats.records_total, 3000u);
  EXPECT_EQ(stats.bytes_in, expected_in);
  std::uint64_t hits = 0;
  for (auto h : stats.hits) hits += h;
  EXPECT_EQ(hits + stats.records_outlier, stats.records_total);
  EXPECT_GT(stats.records_post_coded, 0u);
}

TEST(RetrainTest, Examples) {
  CodecStats s;
  EXPECT_THROW(OutlierRate(s), Error);
  s.records_total = 100;
  s.records_outlier = 0;
  EXPECT_FALSE(ShouldRetrain(s));
  EXPECT_TRUE(ShouldRetrain(s, 0.0));
  s.records_outlier = 4;
  EXPECT_FALSE(ShouldRetrain(s));
  s.records_outlier = 5;
  EXPECT_DOUBLE_EQ(OutlierRate(s), 0.05);
  EXPECT_TRUE(ShouldRetrain(s));
}

TEST(CodecStatsTest, MergeAddsCounters) {
  CodecStats a;
  a.records_total = 2;
  a.hits = {0, 1, 1};
  CodecStats b;
  b.records_total = 3;
  b.records_outlier = 1;
  b.hits = {0, 0, 1, 1};
  a.Merge(b);
  EXPECT_EQ(a.records_total, 5u);
  EXPECT_EQ(a.records_outlier, 1u);
  EXPECT_EQ(a.hits, (std::vector<std::uint64_t>{0, 1, 2, 1}));
}

}  // namespace
}  // namespace pbc
