// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Core domain types shared by the clustering engine, the matcher, the codec
// and the on-disk formats. Everything here is a plain value type; once built,
// instances are never mutated and can be shared across threads freely.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/error.h"

namespace pbc {

// Records are arbitrary byte strings; std::string is used as a byte container.
using Bytes = std::string;
using ByteView = std::string_view;

// A pattern-string symbol: a byte value 0..255, or the wildcard.
using Symbol = std::uint16_t;
inline constexpr Symbol kWildcard = 256;
using PatternString = std::vector<Symbol>;

PatternString SymbolsFromBytes(ByteView bytes);

enum class EncoderKind : std::uint8_t {
  kVarchar = 0,
  kVarint = 1,
  kChar = 2,
  kInt = 3,
};

inline constexpr std::uint32_t kMaxIntDigits = 19;
inline constexpr std::uint32_t kMaxVarintDigits = 19;

// Smallest byte width m such that 10^digits - 1 fits in m bytes.
std::uint32_t MinIntWidth(std::uint32_t digits);

struct FieldEncoder {
  EncoderKind kind = EncoderKind::kVarchar;
  std::uint32_t n = 0;  // CHAR: byte count, INT: digit count
  std::uint32_t m = 0;  // INT: encoded byte width

  static FieldEncoder Varchar() { return {}; }
  static FieldEncoder Varint() { return {EncoderKind::kVarint, 0, 0}; }
  static FieldEncoder Char(std::uint32_t n);
  static FieldEncoder Int(std::uint32_t digits);

  // Throws MalformedToken when the parameters break the kind's invariants.
  void Validate() const;
  std::string ToString() const;

  friend bool operator==(const FieldEncoder&, const FieldEncoder&) = default;
};

class PatternToken {
 public:
  static PatternToken Literal(std::uint8_t byte) { return PatternToken(false, byte, {}); }
  static PatternToken Field(FieldEncoder encoder = FieldEncoder::Varchar()) {
    return PatternToken(true, 0, encoder);
  }

  bool is_field() const { return is_field_; }
  bool is_literal() const { return !is_field_; }
  std::uint8_t literal() const { return literal_; }
  const FieldEncoder& encoder() const { return encoder_; }

  friend bool operator==(const PatternToken&, const PatternToken&) = default;

 private:
  PatternToken(bool is_field, std::uint8_t literal, FieldEncoder encoder)
      : is_field_(is_field), literal_(literal), encoder_(encoder) {}

  bool is_field_;
  std::uint8_t literal_;
  FieldEncoder encoder_;
};

// Alternating literal/field token sequence. Invariants (enforced by
// ValidatePattern): no two adjacent fields, at least one literal.
class Pattern {
 public:
  Pattern() = default;

  const std::vector<PatternToken>& tokens() const { return tokens_; }
  std::uint32_t id() const { return id_; }
  void set_id(std::uint32_t id) { id_ = id; }

  std::size_t literal_count() const { return literal_count_; }
  std::size_t field_count() const { return field_count_; }
  std::vector<FieldEncoder> encoders() const;

  // Cluster-time form: literals as bytes, every field as kWildcard.
  PatternString ToSymbols() const;
  // Human-readable form, e.g. `ab*<INT(2,1)>2`; non-printable bytes as \xNN.
  std::string ToString() const;

  // Replaces the encoder of the field_index-th field.
  Pattern WithEncoder(std::size_t field_index, FieldEncoder encoder) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  friend Pattern ValidatePattern(std::vector<PatternToken> tokens);

  std::vector<PatternToken> tokens_;
  std::uint32_t id_ = 0;
  std::size_t literal_count_ = 0;
  std::size_t field_count_ = 0;
};

// Collapses runs of adjacent fields into one VARCHAR field, then checks the
// invariants. Throws AllWildcards when no literal remains.
Pattern ValidatePattern(std::vector<PatternToken> tokens);
Pattern PatternFromSymbols(const PatternString& symbols);

struct Cluster {
  std::vector<std::uint32_t> members;  // indices into the distinct sample
  PatternString pattern;
  std::uint64_t size = 0;  // records represented, duplicates included
  std::int64_t cached_el = 0;
};

enum class MergeCriterion : std::uint8_t {
  kEncodingLength = 0,
  kEntropy = 1,
  kEditDistance = 2,
};

std::string_view CriterionName(MergeCriterion criterion);
std::optional<MergeCriterion> ParseCriterion(std::string_view name);

// Clustering prices every residual as VARCHAR; the DP is exact only for
// 1-byte field headers, which is what the driver accepts.
struct CostModel {
  std::uint32_t header_bytes_per_field = 1;
  std::uint32_t pattern_id_bytes = 1;
};

inline constexpr std::size_t kHuffmanSymbols = 257;  // 256 bytes + end marker
inline constexpr std::uint16_t kHuffmanEndMarker = 256;

struct HuffmanTable {
  std::array<std::uint8_t, kHuffmanSymbols> lengths{};

  friend bool operator==(const HuffmanTable&, const HuffmanTable&) = default;
};

struct TrainingInfo {
  std::uint64_t sample_bytes = 0;
  MergeCriterion criterion = MergeCriterion::kEncodingLength;
  std::uint32_t k = 0;

  friend bool operator==(const TrainingInfo&, const TrainingInfo&) = default;
};

// id -> Pattern map. Ids are dense 1..K; 0 is the raw-escape id.
class PatternDictionary {
 public:
  PatternDictionary() = default;

  // Appends a pattern and assigns it the next id. Returns that id.
  std::uint32_t Add(Pattern pattern);

  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  // Throws UnknownPatternId for 0 or ids beyond size().
  const Pattern& at(std::uint32_t id) const;

  const std::optional<HuffmanTable>& huffman() const { return huffman_; }
  void set_huffman(std::optional<HuffmanTable> table) { huffman_ = std::move(table); }

  const std::optional<TrainingInfo>& training() const { return training_; }
  void set_training(std::optional<TrainingInfo> info) { training_ = info; }

  friend bool operator==(const PatternDictionary&, const PatternDictionary&) = default;

 private:
  std::vector<Pattern> patterns_;
  std::optional<HuffmanTable> huffman_;
  std::optional<TrainingInfo> training_;
};

// Parsed form of one compressed record.
struct CompressedRecord {
  std::uint32_t pattern_id = 0;  // 0: raw escape
  bool post_coded = false;
  Bytes payload;  // field payload (Encoded) or the raw record (Raw)

  bool is_raw() const { return pattern_id == 0; }
};

}  // namespace pbc
