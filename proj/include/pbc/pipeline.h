// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// End-to-end steps shared by the command-line tool and the benchmarks.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pbc/codec.h"
#include "pbc/extract.h"
#include "pbc/model.h"

namespace pbc {

inline constexpr std::uint64_t kDefaultSampleBytes = 4ull << 20;

struct TrainOptions {
  std::uint64_t sample_bytes = kDefaultSampleBytes;
  std::uint64_t seed = 0;
  bool huffman = false;
  ExtractOptions extract;  // extract.max_distinct_records caps the sample
};

struct TrainReport {
  PatternDictionary dictionary;
  std::size_t sample_records = 0;
  std::uint64_t sample_bytes = 0;
  std::size_t distinct_records = 0;
  std::size_t dropped_clusters = 0;  // clusters whose pattern kept no literal
  ExtractStats stats;
  double seconds = 0;
};

// Sample, deduplicate, cluster, infer encoders, optionally train the
// post-coder. Throws InsufficientSample when fewer than k distinct records
// are available.
TrainReport TrainDictionary(std::span<const std::string> corpus, const TrainOptions& options);

// Compresses every record and returns the counters.
CodecStats MeasureCorpus(const PatternDictionary& dict, std::span<const std::string> records,
                         const CodecOptions& options = {});

struct RetrainScan {
  CodecStats stats;
  // First record after which ShouldRetrain holds, counting from 0.
  std::optional<std::size_t> first_trigger;
};

RetrainScan ScanForRetrain(const PatternDictionary& dict, std::span<const std::string> records,
                           double threshold = kDefaultRetrainThreshold);

}  // namespace pbc
