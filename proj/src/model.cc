// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/model.h"

#include <cstdio>

namespace pbc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAllWildcards: return "AllWildcards";
    case ErrorCode::kNonConforming: return "NonConforming";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kEmptyPattern: return "EmptyPattern";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kUnknownPatternId: return "UnknownPatternId";
    case ErrorCode::kMalformedPayload: return "MalformedPayload";
    case ErrorCode::kEmptyStats: return "EmptyStats";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kMalformedToken: return "MalformedToken";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

PatternString SymbolsFromBytes(ByteView bytes) {
  PatternString out;
  out.reserve(bytes.size());
  for (unsigned char c : bytes) out.push_back(c);
  return out;
}

std::uint32_t MinIntWidth(std::uint32_t digits) {
  // 10^digits - 1 <= 2^(8m) - 1  <=>  10^digits <= 2^(8m)
  unsigned __int128 limit = 1;
  for (std::uint32_t i = 0; i < digits; ++i) limit *= 10;
  std::uint32_t m = 1;
  while ((static_cast<unsigned __int128>(1) << (8 * m)) < limit) ++m;
  return m;
}

FieldEncoder FieldEncoder::Char(std::uint32_t n) {
  FieldEncoder e{EncoderKind::kChar, n, 0};
  e.Validate();
  return e;
}

FieldEncoder FieldEncoder::Int(std::uint32_t digits) {
  FieldEncoder e{EncoderKind::kInt, digits, 0};
  if (digits >= 1 && digits <= kMaxIntDigits) e.m = MinIntWidth(digits);
  e.Validate();
  return e;
}

void FieldEncoder::Validate() const {
  switch (kind) {
    case EncoderKind::kVarchar:
    case EncoderKind::kVarint:
      if (n != 0 || m != 0) throw Error(ErrorCode::kMalformedToken, "unexpected encoder parameters");
      return;
    case EncoderKind::kChar:
      if (n < 1 || m != 0) throw Error(ErrorCode::kMalformedToken, "CHAR(n) needs n >= 1");
      return;
    case EncoderKind::kInt:
      if (n < 1 || n > kMaxIntDigits) {
        throw Error(ErrorCode::kMalformedToken, "INT(n,m) needs 1 <= n <= 19");
      }
      if (m != MinIntWidth(n)) throw Error(ErrorCode::kMalformedToken, "INT(n,m) width is not minimal");
      return;
  }
  throw Error(ErrorCode::kMalformedToken, "unknown encoder kind");
}

std::string FieldEncoder::ToString() const {
  switch (kind) {
    case EncoderKind::kVarchar: return "VARCHAR";
    case EncoderKind::kVarint: return "VARINT";
    case EncoderKind::kChar: return "CHAR(" + std::to_string(n) + ")";
    case EncoderKind::kInt: return "INT(" + std::to_string(n) + "," + std::to_string(m) + ")";
  }
  return "?";
}

std::vector<FieldEncoder> Pattern::encoders() const {
  std::vector<FieldEncoder> out;
  out.reserve(field_count_);
  for (const auto& t : tokens_) {
    if (t.is_field()) out.push_back(t.encoder());
  }
  return out;
}

PatternString Pattern::ToSymbols() const {
  PatternString out;
  out.reserve(tokens_.size());
  for (const auto& t : tokens_) out.push_back(t.is_field() ? kWildcard : t.literal());
  return out;
}

std::string Pattern::ToString() const {
  std::string out;
  for (const auto& t : tokens_) {
    if (t.is_field()) {
      out += "*<" + t.encoder().ToString() + ">";
      continue;
    }
    const unsigned char c = t.literal();
    if (c >= 0x20 && c < 0x7f && c != '\\' && c != '*') {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02x", c);
      out += buf;
    }
  }
  return out;
}

Pattern Pattern::WithEncoder(std::size_t field_index, FieldEncoder encoder) const {
  encoder.Validate();
  Pattern copy = *this;
  std::size_t seen = 0;
  for (auto& t : copy.tokens_) {
    if (!t.is_field()) continue;
    if (seen++ == field_index) {
      t = PatternToken::Field(encoder);
      return copy;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "field index out of range");
}

Pattern ValidatePattern(std::vector<PatternToken> tokens) {
  Pattern p;
  p.tokens_.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.is_field()) {
      t.encoder().Validate();
      if (!p.tokens_.empty() && p.tokens_.back().is_field()) {
        // adjacent wildcards: the boundary between them is unrecoverable
        p.tokens_.back() = PatternToken::Field(FieldEncoder::Varchar());
        continue;
      }
      ++p.field_count_;
    } else {
      ++p.literal_count_;
    }
    p.tokens_.push_back(t);
  }
  if (p.literal_count_ == 0) {
    throw Error(ErrorCode::kAllWildcards, "pattern has no literal token");
  }
  return p;
}

Pattern PatternFromSymbols(const PatternString& symbols) {
  std::vector<PatternToken> tokens;
  tokens.reserve(symbols.size());
  for (Symbol s : symbols) {
    tokens.push_back(s == kWildcard ? PatternToken::Field()
                                    : PatternToken::Literal(static_cast<std::uint8_t>(s)));
  }
  return ValidatePattern(std::move(tokens));
}

std::string_view CriterionName(MergeCriterion criterion) {
  switch (criterion) {
    case MergeCriterion::kEncodingLength: return "el";
    case MergeCriterion::kEntropy: return "entropy";
    case MergeCriterion::kEditDistance: return "edit";
  }
  return "?";
}

std::optional<MergeCriterion> ParseCriterion(std::string_view name) {
  if (name == "el") return MergeCriterion::kEncodingLength;
  if (name == "entropy") return MergeCriterion::kEntropy;
  if (name == "edit") return MergeCriterion::kEditDistance;
  return std::nullopt;
}

std::uint32_t PatternDictionary::Add(Pattern pattern) {
  const auto id = static_cast<std::uint32_t>(patterns_.size() + 1);
  pattern.set_id(id);
  patterns_.push_back(std::move(pattern));
  return id;
}

const Pattern& PatternDictionary::at(std::uint32_t id) const {
  if (id == 0 || id > patterns_.size()) {
    throw Error(ErrorCode::kUnknownPatternId, "pattern id " + std::to_string(id));
  }
  return patterns_[id - 1];
}

}  // namespace pbc
