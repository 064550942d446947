// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Random-access container of compressed records.
//
//   "PBCC" version:u8 dict_len:VarUInt dict count:VarUInt
//   offsets: count x u64be (u32be when the version byte has kNarrowOffsetsFlag)
//   payload: the compressed records back to back
//   crc32:u32be over everything before it
//
// offsets[i] is the start of record i within the payload; record i ends at
// offsets[i + 1], or at the end of the payload for the last record.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/codec.h"
#include "pbc/model.h"

namespace pbc {

inline constexpr char kContainerMagic[4] = {'P', 'B', 'C', 'C'};
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::uint8_t kNarrowOffsetsFlag = 0x80;

struct ContainerOptions {
  bool narrow_offsets = false;  // 32-bit offsets; payload must stay below 4 GiB
};

std::string BuildContainer(std::span<const std::string> records, const PatternDictionary& dict,
                           const ContainerOptions& options = {}, CodecStats* stats = nullptr);

class ContainerReader {
 public:
  // Keeps a view of data; the caller keeps the bytes alive. With verify, the
  // checksum and the offset index are checked up front.
  explicit ContainerReader(std::string_view data, bool verify = true);

  std::size_t size() const { return count_; }
  const PatternDictionary& dictionary() const { return *dict_; }
  std::size_t offset_width() const { return offset_width_; }

  // Touches only the index entries of i and i + 1 and record i's bytes.
  // bytes_touched, when given, receives that byte count.
  std::string Lookup(std::size_t i, std::size_t* bytes_touched = nullptr) const;

 private:
  std::uint64_t OffsetAt(std::size_t i) const;

  std::string_view data_;
  std::unique_ptr<PatternDictionary> dict_;  // heap-held so the codec's reference survives moves
  std::unique_ptr<Codec> codec_;
  std::size_t count_ = 0;
  std::size_t offset_width_ = 8;
  std::size_t index_pos_ = 0;
  std::size_t payload_pos_ = 0;
  std::size_t payload_size_ = 0;
};

// Comparison arm: records compressed in blocks of B, where any lookup
// decodes the whole block it falls in. dict must outlive the baseline.
class BlockBaseline {
 public:
  BlockBaseline(std::span<const std::string> records, const PatternDictionary& dict,
                std::size_t block_size);

  std::string Lookup(std::size_t i, std::size_t* bytes_touched = nullptr) const;
  std::size_t size() const { return count_; }
  std::size_t block_size() const { return block_size_; }

 private:
  Codec codec_;
  std::size_t count_ = 0;
  std::size_t block_size_ = 1;
  std::vector<std::string> blocks_;
};

struct BenchResult {
  std::size_t lookups = 0;
  double seconds = 0;
  double lookups_per_second = 0;
  std::uint64_t bytes_touched = 0;
  double bytes_per_lookup = 0;
};

// Seeded uniform sample without replacement; max(1, round(fraction * n))
// indices for a nonempty container, in random order.
std::vector<std::size_t> SampleIndices(std::size_t n, double fraction, std::uint64_t seed);

BenchResult BenchRandomAccess(const ContainerReader& reader, double fraction, std::uint64_t seed);
BenchResult BenchBlockBaseline(const BlockBaseline& baseline, double fraction, std::uint64_t seed);

}  // namespace pbc
