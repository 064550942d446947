// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/encoders.h"

#include <algorithm>
#include <limits>

namespace pbc {

void PutVarUInt(std::string& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<char>(value));
}

std::size_t VarUIntSize(std::uint64_t value) {
  std::size_t n = 1;
  while (value >= 0x80) {
    value >>= 7;
    ++n;
  }
  return n;
}

void PutBigEndian(std::string& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) {
    out.push_back(static_cast<char>(i >= 8 ? 0 : (value >> (8 * i)) & 0xff));
  }
}

std::uint8_t ByteReader::ReadByte() {
  if (pos_ >= data_.size()) throw Error(ErrorCode::kTruncated, "unexpected end of stream");
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint64_t ByteReader::ReadVarUInt() {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < kMaxVarUIntBytes; ++i) {
    const std::uint8_t b = ReadByte();
    const std::uint64_t group = b & 0x7f;
    if (i == kMaxVarUIntBytes - 1 && group > 1) {
      throw Error(ErrorCode::kOverflow, "varint exceeds 64 bits");
    }
    value |= group << (7 * i);
    if ((b & 0x80) == 0) return value;
  }
  throw Error(ErrorCode::kOverflow, "varint exceeds 64 bits");
}

std::uint64_t ByteReader::ReadBigEndian(std::size_t width) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 8) | ReadByte();
  return value;
}

std::string_view ByteReader::ReadBytes(std::size_t count) {
  if (count > remaining()) throw Error(ErrorCode::kTruncated, "unexpected end of stream");
  auto out = data_.substr(pos_, count);
  pos_ += count;
  return out;
}

namespace {

bool AllDigits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t ParseDigits(std::string_view s) {
  std::uint64_t v = 0;
  for (char c : s) v = v * 10 + static_cast<std::uint64_t>(c - '0');
  return v;
}

bool VarintEligible(std::string_view s) {
  return !s.empty() && s.size() <= kMaxVarintDigits && AllDigits(s) &&
         (s.size() == 1 || s[0] != '0');
}

std::uint64_t Pow10(std::uint32_t n) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < n; ++i) v *= 10;
  return v;
}

}  // namespace

bool Conforms(std::string_view value, const FieldEncoder& encoder) {
  switch (encoder.kind) {
    case EncoderKind::kVarchar: return true;
    case EncoderKind::kChar: return value.size() == encoder.n;
    case EncoderKind::kInt: return value.size() == encoder.n && AllDigits(value);
    case EncoderKind::kVarint: return VarintEligible(value);
  }
  return false;
}

void EncodeField(std::string_view value, const FieldEncoder& encoder, std::string& out) {
  if (!Conforms(value, encoder)) {
    throw Error(ErrorCode::kNonConforming, "value does not fit " + encoder.ToString());
  }
  switch (encoder.kind) {
    case EncoderKind::kVarchar:
      PutVarUInt(out, value.size());
      out.append(value);
      return;
    case EncoderKind::kChar:
      out.append(value);
      return;
    case EncoderKind::kInt:
      PutBigEndian(out, ParseDigits(value), encoder.m);
      return;
    case EncoderKind::kVarint:
      PutVarUInt(out, ParseDigits(value));
      return;
  }
}

std::string EncodeField(std::string_view value, const FieldEncoder& encoder) {
  std::string out;
  EncodeField(value, encoder, out);
  return out;
}

std::size_t EncodedFieldSize(std::string_view value, const FieldEncoder& encoder) {
  switch (encoder.kind) {
    case EncoderKind::kVarchar: return VarUIntSize(value.size()) + value.size();
    case EncoderKind::kChar: return encoder.n;
    case EncoderKind::kInt: return encoder.m;
    case EncoderKind::kVarint: return VarUIntSize(ParseDigits(value));
  }
  return 0;
}

std::string DecodeField(ByteReader& in, const FieldEncoder& encoder) {
  switch (encoder.kind) {
    case EncoderKind::kVarchar: {
      const std::uint64_t len = in.ReadVarUInt();
      if (len > in.remaining()) throw Error(ErrorCode::kTruncated, "VARCHAR body cut short");
      return std::string(in.ReadBytes(static_cast<std::size_t>(len)));
    }
    case EncoderKind::kChar:
      return std::string(in.ReadBytes(encoder.n));
    case EncoderKind::kInt: {
      const std::uint64_t v = in.ReadBigEndian(encoder.m);
      if (encoder.n < kMaxIntDigits + 1 && v >= Pow10(encoder.n)) {
        throw Error(ErrorCode::kMalformedPayload, "INT value wider than its digit count");
      }
      std::string digits = std::to_string(v);
      return std::string(encoder.n - digits.size(), '0') + digits;
    }
    case EncoderKind::kVarint:
      return std::to_string(in.ReadVarUInt());
  }
  throw Error(ErrorCode::kMalformedPayload, "unknown encoder kind");
}

namespace {

template <typename View>
FieldEncoder InferImpl(std::span<const View> values) {
  if (values.empty()) return FieldEncoder::Varchar();

  const std::size_t first_len = values.front().size();
  bool same_len = true;
  bool all_digits = true;
  bool varint_ok = true;
  std::uint64_t varchar_bytes = 0;
  std::uint64_t varint_bytes = 0;
  for (const auto& v : values) {
    const std::string_view s(v);
    same_len = same_len && s.size() == first_len;
    const bool digits = !s.empty() && AllDigits(s);
    all_digits = all_digits && digits;
    varint_ok = varint_ok && VarintEligible(s);
    varchar_bytes += VarUIntSize(s.size()) + s.size();
    if (varint_ok) varint_bytes += VarUIntSize(ParseDigits(s));
  }
  const std::uint64_t count = values.size();

  // Evaluated in tie-break order; a later candidate must be strictly cheaper.
  FieldEncoder best = FieldEncoder::Varchar();
  std::uint64_t best_bytes = std::numeric_limits<std::uint64_t>::max();
  auto consider = [&](const FieldEncoder& e, std::uint64_t bytes) {
    if (bytes < best_bytes) {
      best = e;
      best_bytes = bytes;
    }
  };
  if (all_digits && same_len && first_len <= kMaxIntDigits) {
    const auto e = FieldEncoder::Int(static_cast<std::uint32_t>(first_len));
    consider(e, count * e.m);
  }
  if (varint_ok) consider(FieldEncoder::Varint(), varint_bytes);
  if (same_len && first_len >= 1) {
    consider(FieldEncoder::Char(static_cast<std::uint32_t>(first_len)), count * first_len);
  }
  consider(FieldEncoder::Varchar(), varchar_bytes);
  return best;
}

}  // namespace

FieldEncoder InferEncoder(std::span<const std::string> values) { return InferImpl(values); }
FieldEncoder InferEncoder(std::span<const std::string_view> values) { return InferImpl(values); }

}  // namespace pbc
