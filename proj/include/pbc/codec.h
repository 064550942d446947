// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Per-record compression.
//
// Wire format of one compressed record:
//
//   matched:  VarUInt(id) flags payload
//   outlier:  VarUInt(0) VarUInt(length) raw bytes
//
// flags bit0 marks a Huffman-coded payload; the other bits must be zero.
// Patterns without fields carry no flags byte and no payload. The payload is
// the concatenated field encodings, or their Huffman coding when that is
// strictly shorter. A matched record whose encoding would exceed the outlier
// encoding is written as an outlier instead.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/bytes.h"
#include "pbc/huffman.h"
#include "pbc/matcher.h"
#include "pbc/model.h"

namespace pbc {

inline constexpr std::uint8_t kFlagPostCoded = 0x01;
inline constexpr double kDefaultRetrainThreshold = 0.05;

struct CodecOptions {
  bool use_postcoder = true;     // only when the dictionary carries a table
  bool fixed_width_ids = false;  // 4-byte big-endian ids instead of VarUInt
  bool prefilter = true;
};

struct CodecStats {
  std::uint64_t records_total = 0;
  std::uint64_t records_outlier = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  std::uint64_t records_post_coded = 0;
  std::vector<std::uint64_t> hits;  // by pattern id; hits[0] is unused

  void Merge(const CodecStats& other);
  double ratio() const;
};

// Throws EmptyStats when no record has been seen.
double OutlierRate(const CodecStats& stats);
bool ShouldRetrain(const CodecStats& stats, double threshold = kDefaultRetrainThreshold);

// Plain field payloads of the records that match the dictionary.
std::vector<std::string> MatchedPayloads(const PatternDictionary& dict,
                                         std::span<const std::string> records);

class Codec {
 public:
  explicit Codec(const PatternDictionary& dict, CodecOptions options = {});

  // Appends the compressed record to out. Never throws for any input.
  void Compress(std::string_view record, std::string& out, CodecStats* stats = nullptr) const;
  std::string Compress(std::string_view record, CodecStats* stats = nullptr) const;

  // Consumes exactly one record from in.
  std::string Decompress(ByteReader& in) const;
  // The whole input must be one record.
  std::string Decompress(std::string_view bytes) const;

  CompressedRecord Parse(ByteReader& in) const;

  const PatternDictionary& dictionary() const { return dict_; }
  const CodecOptions& options() const { return options_; }
  const Matcher& matcher() const { return matcher_; }

 private:
  void PutId(std::string& out, std::uint32_t id) const;
  std::uint32_t ReadId(ByteReader& in) const;
  void PutOutlier(std::string_view record, std::string& out) const;
  std::string Rebuild(const Pattern& pattern, ByteReader& payload) const;

  const PatternDictionary& dict_;
  CodecOptions options_;
  Matcher matcher_;
  std::optional<HuffmanCoder> huffman_;
};

}  // namespace pbc
