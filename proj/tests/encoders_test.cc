// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/encoders.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace pbc {
namespace {

using testing::Rng;
using testing::Uniform;

std::string Hex(std::string_view s) {
  static const char* d = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (!out.empty()) out.push_back(' ');
    out.push_back(d[c >> 4]);
    out.push_back(d[c & 15]);
  }
  return out;
}

TEST(VarUIntTest, KnownEncodings) {
  std::string out;
  PutVarUInt(out, 0);
  PutVarUInt(out, 127);
  PutVarUInt(out, 128);
  PutVarUInt(out, 300);
  EXPECT_EQ(Hex(out), "00 7F 80 01 AC 02");
  EXPECT_EQ(VarUIntSize(0), 1u);
  EXPECT_EQ(VarUIntSize(1ull << 63), 10u);
}

TEST(VarUIntTest, RoundTripAndLimits) {
  Rng rng(11);
  std::string out;
  std::vector<std::uint64_t> values = {0, 1, 127, 128, ~0ull};
  for (int i = 0; i < 500; ++i) values.push_back(rng() >> Uniform(rng, 0, 63));
  for (auto v : values) PutVarUInt(out, v);
  ByteReader in(out);
  for (auto v : values) EXPECT_EQ(in.ReadVarUInt(), v);
  EXPECT_TRUE(in.at_end());

  ByteReader truncated(std::string_view("\x80\x80", 2));
  EXPECT_THROW(truncated.ReadVarUInt(), Error);
  const std::string over(10, '\xff');
  ByteReader overflow(over);
  try {
    overflow.ReadVarUInt();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(EncodeFieldTest, Examples) {
  EXPECT_EQ(Hex(EncodeField("42", FieldEncoder::Int(2))), "2A");
  EXPECT_EQ(Hex(EncodeField("", FieldEncoder::Varchar())), "00");
  EXPECT_EQ(Hex(EncodeField("300", FieldEncoder::Varint())), "AC 02");
  EXPECT_EQ(Hex(EncodeField("007", FieldEncoder::Int(3))), "00 07");
  EXPECT_EQ(EncodeField("IBM", FieldEncoder::Char(3)), "IBM");
  EXPECT_EQ(Hex(EncodeField("ab", FieldEncoder::Varchar())), "02 61 62");
}

TEST(EncodeFieldTest, NonConformingValues) {
  auto code = [](std::string_view v, FieldEncoder e) {
    try {
      EncodeField(v, e);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code("4x", FieldEncoder::Int(2)), ErrorCode::kNonConforming);
  EXPECT_EQ(code("123", FieldEncoder::Int(2)), ErrorCode::kNonConforming);
  EXPECT_EQ(code("07", FieldEncoder::Varint()), ErrorCode::kNonConforming);
  EXPECT_EQ(code("", FieldEncoder::Varint()), ErrorCode::kNonConforming);
  EXPECT_EQ(code("12345678901234567890", FieldEncoder::Varint()), ErrorCode::kNonConforming);
  EXPECT_EQ(code("ab", FieldEncoder::Char(3)), ErrorCode::kNonConforming);
}

TEST(DecodeFieldTest, Examples) {
  {
    ByteReader in(std::string_view("\x00\x07", 2));
    EXPECT_EQ(DecodeField(in, FieldEncoder::Int(3)), "007");
  }
  {
    ByteReader in("\xAC\x02");
    EXPECT_EQ(DecodeField(in, FieldEncoder::Varint()), "300");
  }
  {
    ByteReader in("\x63");  // 99 does not fit INT(1,1)
    EXPECT_THROW(DecodeField(in, FieldEncoder::Int(1)), Error);
  }
  {
    ByteReader in("\x05" "ab");
    try {
      DecodeField(in, FieldEncoder::Varchar());
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTruncated);
    }
  }
}

// Random conforming values for every encoder kind survive a round trip and
// EncodedFieldSize predicts the byte count.
TEST(EncodeFieldTest, RoundTripFuzz) {
  Rng rng(5);
  for (int iter = 0; iter < 3000; ++iter) {
    FieldEncoder e;
    std::string v;
    switch (Uniform(rng, 0, 3)) {
      case 0:
        v = testing::RandomBytes(rng, Uniform(rng, 0, 300));
        break;
      case 1: {
        const auto n = static_cast<std::uint32_t>(Uniform(rng, 1, 40));
        e = FieldEncoder::Char(n);
        v = testing::RandomBytes(rng, n);
        break;
      }
      case 2: {
        const auto n = static_cast<std::uint32_t>(Uniform(rng, 1, kMaxIntDigits));
        e = FieldEncoder::Int(n);
        v = testing::RandomDigits(rng, n);
        break;
      }
      default:
        e = FieldEncoder::Varint();
        v = std::to_string(Uniform(rng, 0, 9999999999999999999ull) >> Uniform(rng, 0, 63));
        break;
    }
    ASSERT_TRUE(Conforms(v, e));
    const std::string enc = EncodeField(v, e);
    EXPECT_EQ(enc.size(), EncodedFieldSize(v, e));
    ByteReader in(enc);
    EXPECT_EQ(DecodeField(in, e), v) << e.ToString();
    EXPECT_TRUE(in.at_end());
  }
}

TEST(InferEncoderTest, Examples) {
  const std::vector<std::string> prices = {"23", "95", "17", "42"};
  EXPECT_EQ(InferEncoder(prices), FieldEncoder::Int(2));
  const std::vector<std::string> sides = {"B", "S", "B"};
  EXPECT_EQ(InferEncoder(sides), FieldEncoder::Char(1));
  const std::vector<std::string> padded = {"7", "007"};
  EXPECT_EQ(InferEncoder(padded), FieldEncoder::Varchar());
  const std::vector<std::string> counts = {"7", "1234", "56"};
  EXPECT_EQ(InferEncoder(counts), FieldEncoder::Varint());
  EXPECT_EQ(InferEncoder(std::span<const std::string>()), FieldEncoder::Varchar());
}

// The inferred encoder accepts every value and no eligible encoder is cheaper.
TEST(InferEncoderTest, ChosenEncoderIsCheapestEligible) {
  Rng rng(9);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> values(Uniform(rng, 1, 8));
    const bool fixed = testing::Coin(rng, 0.5);
    const std::size_t len = Uniform(rng, 1, 6);
    for (auto& v : values) {
      const std::size_t l = fixed ? len : Uniform(rng, 0, 6);
      v = testing::Coin(rng, 0.7) ? testing::RandomDigits(rng, l) : testing::RandomText(rng, l, "ab0");
    }
    const FieldEncoder chosen = InferEncoder(values);
    auto cost = [&](const FieldEncoder& e) -> std::optional<std::size_t> {
      std::size_t total = 0;
      for (const auto& v : values) {
        if (!testing::RefConforms(v, e)) return std::nullopt;
        total += EncodedFieldSize(v, e);
      }
      return total;
    };
    const auto chosen_cost = cost(chosen);
    ASSERT_TRUE(chosen_cost.has_value());
    std::vector<FieldEncoder> candidates = {FieldEncoder::Varchar(), FieldEncoder::Varint()};
    candidates.push_back(FieldEncoder::Char(static_cast<std::uint32_t>(values[0].empty() ? 1 : values[0].size())));
    if (!values[0].empty()) candidates.push_back(FieldEncoder::Int(static_cast<std::uint32_t>(values[0].size())));
    for (const auto& c : candidates) {
      const auto c_cost = cost(c);
      if (c_cost) {
        EXPECT_LE(*chosen_cost, *c_cost) << c.ToString();
      }
    }
  }
}

}  // namespace
}  // namespace pbc
