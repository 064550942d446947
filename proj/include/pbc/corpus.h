// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Corpus framing, compressed streams and training samples.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/codec.h"

namespace pbc {

enum class Framing : std::uint8_t {
  kLines = 0,   // LF-terminated; the LF is not part of the record
  kFramed = 1,  // VarUInt length prefix
};

std::optional<Framing> ParseFraming(std::string_view name);
std::string_view FramingName(Framing framing);

struct Corpus {
  std::vector<std::string> records;
  Framing framing = Framing::kLines;
  bool final_newline = true;  // lines mode: whether the last record had an LF
};

// Lines mode never fails; framed mode throws Truncated or Overflow.
Corpus ParseCorpus(std::string_view data, Framing framing);
// Lines mode throws InvalidArgument for a record containing LF.
std::string SerializeCorpus(const Corpus& corpus);

// Compressed stream: "PBCS" version:u8 flags:u8 count:VarUInt record*.
// flags bit0: framed input, bit1: lines input without a final LF.
inline constexpr char kStreamMagic[4] = {'P', 'B', 'C', 'S'};
inline constexpr std::uint8_t kStreamVersion = 1;

std::string CompressCorpus(const Corpus& corpus, const Codec& codec, CodecStats* stats,
                           std::size_t threads = 1);
Corpus DecompressCorpus(std::string_view stream, const Codec& codec);

// Uniform random subset under a byte budget: records are visited in a seeded
// random order and kept while they fit. The result is in input order.
std::vector<std::string> SampleRecords(std::span<const std::string> records,
                                       std::uint64_t byte_budget, std::uint64_t seed);

}  // namespace pbc
