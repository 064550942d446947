// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/dictio.h"

#include <zlib.h>

#include "pbc/huffman.h"

namespace pbc {

namespace {

constexpr std::uint8_t kTokenLiteral = 0x00;
constexpr std::uint8_t kTokenField = 0x01;
constexpr std::uint8_t kPostcoderNone = 0;
constexpr std::uint8_t kPostcoderHuffman = 1;
constexpr std::size_t kChecksumBytes = 4;

void PutEncoder(std::string& out, const FieldEncoder& enc) {
  out.push_back(static_cast<char>(enc.kind));
  switch (enc.kind) {
    case EncoderKind::kVarchar:
    case EncoderKind::kVarint:
      break;
    case EncoderKind::kChar:
      PutVarUInt(out, enc.n);
      break;
    case EncoderKind::kInt:
      PutVarUInt(out, enc.n);
      PutVarUInt(out, enc.m);
      break;
  }
}

std::uint32_t ReadSmall(ByteReader& in) {
  const std::uint64_t v = ReadCanonicalVarUInt(in);
  if (v > 0xffffffffu) throw Error(ErrorCode::kMalformedToken, "parameter out of range");
  return static_cast<std::uint32_t>(v);
}

FieldEncoder ReadEncoder(ByteReader& in) {
  FieldEncoder enc;
  const std::uint8_t tag = in.ReadByte();
  switch (tag) {
    case 0:
      return FieldEncoder::Varchar();
    case 1:
      return FieldEncoder::Varint();
    case 2:
      enc.kind = EncoderKind::kChar;
      enc.n = ReadSmall(in);
      break;
    case 3:
      enc.kind = EncoderKind::kInt;
      enc.n = ReadSmall(in);
      enc.m = ReadSmall(in);
      break;
    default:
      throw Error(ErrorCode::kMalformedToken, "unknown encoder tag");
  }
  enc.Validate();
  return enc;
}

Pattern ReadPattern(ByteReader& in) {
  const std::uint64_t count = ReadCanonicalVarUInt(in);
  if (count > in.remaining() / 2) throw Error(ErrorCode::kMalformedToken, "token count too large");
  std::vector<PatternToken> tokens;
  tokens.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t t = 0; t < count; ++t) {
    const std::uint8_t tag = in.ReadByte();
    if (tag == kTokenLiteral) {
      tokens.push_back(PatternToken::Literal(in.ReadByte()));
    } else if (tag == kTokenField) {
      if (!tokens.empty() && tokens.back().is_field()) {
        throw Error(ErrorCode::kMalformedToken, "adjacent fields");
      }
      tokens.push_back(PatternToken::Field(ReadEncoder(in)));
    } else {
      throw Error(ErrorCode::kMalformedToken, "unknown token tag");
    }
  }
  try {
    return ValidatePattern(std::move(tokens));
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedToken, e.what());
  }
}

}  // namespace

std::uint32_t Crc32(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in chunks.
  while (!data.empty()) {
    const std::size_t chunk = std::min<std::size_t>(data.size(), 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(chunk));
    data.remove_prefix(chunk);
  }
  return static_cast<std::uint32_t>(crc);
}

std::uint64_t ReadCanonicalVarUInt(ByteReader& in) {
  const std::size_t start = in.position();
  std::uint64_t v;
  try {
    v = in.ReadVarUInt();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOverflow) throw Error(ErrorCode::kMalformedToken, e.what());
    throw;
  }
  if (in.position() - start != VarUIntSize(v)) {
    throw Error(ErrorCode::kMalformedToken, "non-canonical varint");
  }
  return v;
}

std::string WriteDict(const PatternDictionary& dict) {
  std::string out(kDictMagic, sizeof(kDictMagic));
  out.push_back(static_cast<char>(kDictVersion));
  out.push_back(static_cast<char>(dict.huffman() ? kPostcoderHuffman : kPostcoderNone));
  PutVarUInt(out, dict.size());
  for (const Pattern& p : dict.patterns()) {
    PutVarUInt(out, p.tokens().size());
    for (const auto& token : p.tokens()) {
      if (token.is_literal()) {
        out.push_back(static_cast<char>(kTokenLiteral));
        out.push_back(static_cast<char>(token.literal()));
      } else {
        out.push_back(static_cast<char>(kTokenField));
        PutEncoder(out, token.encoder());
      }
    }
  }
  if (dict.huffman()) {
    for (std::uint8_t len : dict.huffman()->lengths) out.push_back(static_cast<char>(len));
  }
  if (const auto& info = dict.training()) {
    std::string section;
    PutVarUInt(section, info->sample_bytes);
    section.push_back(static_cast<char>(info->criterion));
    PutVarUInt(section, info->k);
    PutVarUInt(out, section.size());
    out += section;
  }
  PutBigEndian(out, Crc32(out), kChecksumBytes);
  return out;
}

PatternDictionary ReadDict(std::string_view bytes) {
  if (bytes.size() < sizeof(kDictMagic) || bytes.substr(0, 4) != std::string_view(kDictMagic, 4)) {
    throw Error(ErrorCode::kBadMagic, "not a dictionary file");
  }
  if (bytes.size() < sizeof(kDictMagic) + kChecksumBytes) {
    throw Error(ErrorCode::kChecksumMismatch, "dictionary file too short");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - kChecksumBytes);
  ByteReader tail(bytes.substr(body.size()));
  if (tail.ReadBigEndian(kChecksumBytes) != Crc32(body)) {
    throw Error(ErrorCode::kChecksumMismatch, "dictionary checksum mismatch");
  }

  ByteReader in(body);
  in.ReadBytes(sizeof(kDictMagic));
  try {
    if (in.ReadByte() != kDictVersion) {
      throw Error(ErrorCode::kUnsupportedVersion, "unsupported dictionary version");
    }
    const std::uint8_t postcoder = in.ReadByte();
    if (postcoder > kPostcoderHuffman) throw Error(ErrorCode::kMalformedToken, "unknown post-coder");
    const std::uint64_t count = ReadCanonicalVarUInt(in);
    if (count > in.remaining() / 3) throw Error(ErrorCode::kMalformedToken, "pattern count too large");

    PatternDictionary dict;
    for (std::uint64_t i = 0; i < count; ++i) dict.Add(ReadPattern(in));
    if (postcoder == kPostcoderHuffman) {
      HuffmanTable table;
      for (auto& len : table.lengths) len = in.ReadByte();
      ValidateHuffmanTable(table);
      dict.set_huffman(table);
    }
    if (!in.at_end()) {
      const std::uint64_t len = ReadCanonicalVarUInt(in);
      if (len == 0 || len != in.remaining()) {
        throw Error(ErrorCode::kMalformedToken, "bad training section length");
      }
      TrainingInfo info;
      info.sample_bytes = ReadCanonicalVarUInt(in);
      const std::uint8_t criterion = in.ReadByte();
      if (criterion > static_cast<std::uint8_t>(MergeCriterion::kEditDistance)) {
        throw Error(ErrorCode::kMalformedToken, "unknown criterion");
      }
      info.criterion = static_cast<MergeCriterion>(criterion);
      info.k = ReadSmall(in);
      if (!in.at_end()) throw Error(ErrorCode::kMalformedToken, "trailing bytes in training section");
      dict.set_training(info);
    }
    return dict;
  } catch (const Error& e) {
    // Inside a checksummed body a short read means a malformed structure.
    if (e.code() == ErrorCode::kTruncated || e.code() == ErrorCode::kOverflow) {
      throw Error(ErrorCode::kMalformedToken, e.what());
    }
    throw;
  }
}

}  // namespace pbc
