// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/codec.h"

#include "pbc/encoders.h"

namespace pbc {

void CodecStats::Merge(const CodecStats& other) {
  records_total += other.records_total;
  records_outlier += other.records_outlier;
  bytes_in += other.bytes_in;
  bytes_out += other.bytes_out;
  records_post_coded += other.records_post_coded;
  if (hits.size() < other.hits.size()) hits.resize(other.hits.size(), 0);
  for (std::size_t i = 0; i < other.hits.size(); ++i) hits[i] += other.hits[i];
}

double CodecStats::ratio() const {
  return bytes_in == 0 ? 0.0 : static_cast<double>(bytes_out) / static_cast<double>(bytes_in);
}

double OutlierRate(const CodecStats& stats) {
  if (stats.records_total == 0) throw Error(ErrorCode::kEmptyStats, "no records seen");
  return static_cast<double>(stats.records_outlier) / static_cast<double>(stats.records_total);
}

bool ShouldRetrain(const CodecStats& stats, double threshold) {
  return OutlierRate(stats) >= threshold;
}

std::vector<std::string> MatchedPayloads(const PatternDictionary& dict,
                                         std::span<const std::string> records) {
  Matcher matcher(dict);
  std::vector<std::string> out;
  for (const auto& r : records) {
    auto sel = matcher.Select(r);
    if (!sel || sel->fields.empty()) continue;
    const auto encoders = dict.at(sel->pattern_id).encoders();
    std::string payload;
    for (std::size_t f = 0; f < encoders.size(); ++f) EncodeField(sel->fields[f], encoders[f], payload);
    out.push_back(std::move(payload));
  }
  return out;
}

Codec::Codec(const PatternDictionary& dict, CodecOptions options)
    : dict_(dict), options_(options), matcher_(dict) {
  if (options_.use_postcoder && dict.huffman()) huffman_.emplace(*dict.huffman());
}

void Codec::PutId(std::string& out, std::uint32_t id) const {
  if (options_.fixed_width_ids) {
    PutBigEndian(out, id, 4);
  } else {
    PutVarUInt(out, id);
  }
}

std::uint32_t Codec::ReadId(ByteReader& in) const {
  const std::uint64_t id = options_.fixed_width_ids ? in.ReadBigEndian(4) : in.ReadVarUInt();
  if (id > 0xffffffffu) throw Error(ErrorCode::kUnknownPatternId, "pattern id out of range");
  return static_cast<std::uint32_t>(id);
}

void Codec::PutOutlier(std::string_view record, std::string& out) const {
  PutId(out, 0);
  PutVarUInt(out, record.size());
  out.append(record);
}

void Codec::Compress(std::string_view record, std::string& out, CodecStats* stats) const {
  const std::size_t start = out.size();
  const std::size_t id_bytes = options_.fixed_width_ids ? 4 : 1;
  const std::size_t escape_size = id_bytes + VarUIntSize(record.size()) + record.size();

  bool matched = false;
  bool coded = false;
  std::uint32_t id = 0;
  if (auto sel = matcher_.Select(record, options_.prefilter)) {
    id = sel->pattern_id;
    const Pattern& pattern = dict_.at(id);
    std::string encoded;
    PutId(encoded, id);
    if (pattern.field_count() > 0) {
      const auto encoders = pattern.encoders();
      std::string payload;
      for (std::size_t f = 0; f < encoders.size(); ++f) {
        EncodeField(sel->fields[f], encoders[f], payload);
      }
      if (huffman_ && huffman_->EncodedSize(payload) < payload.size()) {
        coded = true;
        encoded.push_back(static_cast<char>(kFlagPostCoded));
        huffman_->Encode(payload, encoded);
      } else {
        encoded.push_back(0);
        encoded += payload;
      }
    }
    if (encoded.size() <= escape_size) {
      out += encoded;
      matched = true;
    }
  }
  if (!matched) PutOutlier(record, out);

  if (stats) {
    ++stats->records_total;
    stats->bytes_in += record.size();
    stats->bytes_out += out.size() - start;
    if (matched) {
      if (stats->hits.size() <= id) stats->hits.resize(dict_.size() + 1, 0);
      ++stats->hits[id];
      if (coded) ++stats->records_post_coded;
    } else {
      ++stats->records_outlier;
    }
  }
}

std::string Codec::Compress(std::string_view record, CodecStats* stats) const {
  std::string out;
  Compress(record, out, stats);
  return out;
}

CompressedRecord Codec::Parse(ByteReader& in) const {
  CompressedRecord rec;
  rec.pattern_id = ReadId(in);
  if (rec.pattern_id == 0) {
    const std::uint64_t len = in.ReadVarUInt();
    if (len > in.remaining()) throw Error(ErrorCode::kTruncated, "raw record overruns input");
    rec.payload = std::string(in.ReadBytes(static_cast<std::size_t>(len)));
    return rec;
  }
  const Pattern& pattern = dict_.at(rec.pattern_id);
  if (pattern.field_count() == 0) return rec;
  const std::uint8_t flags = in.ReadByte();
  if ((flags & ~kFlagPostCoded) != 0) throw Error(ErrorCode::kMalformedPayload, "unknown flag bits");
  rec.post_coded = (flags & kFlagPostCoded) != 0;
  if (rec.post_coded) {
    if (!huffman_) throw Error(ErrorCode::kMalformedPayload, "post-coded record without a Huffman table");
    rec.payload = huffman_->Decode(in);
  } else {
    // Plain payloads are self-delimiting only through the field encoders.
    ByteReader probe(in.rest());
    Rebuild(pattern, probe);
    rec.payload = std::string(in.ReadBytes(probe.position()));
  }
  return rec;
}

std::string Codec::Rebuild(const Pattern& pattern, ByteReader& payload) const {
  std::string out;
  for (const auto& token : pattern.tokens()) {
    if (token.is_literal()) {
      out.push_back(static_cast<char>(token.literal()));
    } else {
      out += DecodeField(payload, token.encoder());
    }
  }
  return out;
}

std::string Codec::Decompress(ByteReader& in) const {
  const std::uint32_t id = ReadId(in);
  if (id == 0) {
    const std::uint64_t len = in.ReadVarUInt();
    if (len > in.remaining()) throw Error(ErrorCode::kTruncated, "raw record overruns input");
    return std::string(in.ReadBytes(static_cast<std::size_t>(len)));
  }
  const Pattern& pattern = dict_.at(id);
  if (pattern.field_count() == 0) {
    ByteReader empty({});
    return Rebuild(pattern, empty);
  }
  const std::uint8_t flags = in.ReadByte();
  if ((flags & ~kFlagPostCoded) != 0) throw Error(ErrorCode::kMalformedPayload, "unknown flag bits");
  if ((flags & kFlagPostCoded) == 0) return Rebuild(pattern, in);

  if (!huffman_) throw Error(ErrorCode::kMalformedPayload, "post-coded record without a Huffman table");
  const std::string payload = huffman_->Decode(in);
  ByteReader fields(payload);
  std::string out = Rebuild(pattern, fields);
  if (!fields.at_end()) throw Error(ErrorCode::kMalformedPayload, "trailing bytes in coded payload");
  return out;
}

std::string Codec::Decompress(std::string_view bytes) const {
  ByteReader in(bytes);
  std::string out = Decompress(in);
  if (!in.at_end()) throw Error(ErrorCode::kMalformedPayload, "trailing bytes after record");
  return out;
}

}  // namespace pbc
