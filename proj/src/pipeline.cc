// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/pipeline.h"

#include <chrono>

#include "pbc/corpus.h"
#include "pbc/huffman.h"

namespace pbc {

TrainReport TrainDictionary(std::span<const std::string> corpus, const TrainOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  TrainReport report;
  const std::vector<std::string> sample = SampleRecords(corpus, options.sample_bytes, options.seed);
  report.sample_records = sample.size();
  for (const auto& r : sample) report.sample_bytes += r.size();

  ExtractResult result = ExtractPatternsDetailed(sample, options.extract);
  report.distinct_records = result.sample.records.size();
  for (std::uint32_t id : result.pattern_ids) report.dropped_clusters += id == 0 ? 1 : 0;
  report.stats = result.stats;
  report.dictionary = std::move(result.dictionary);
  if (options.huffman) {
    const auto payloads = MatchedPayloads(report.dictionary, sample);
    report.dictionary.set_huffman(TrainHuffman(payloads));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CodecStats MeasureCorpus(const PatternDictionary& dict, std::span<const std::string> records,
                         const CodecOptions& options) {
  Codec codec(dict, options);
  CodecStats stats;
  std::string scratch;
  for (const auto& r : records) {
    scratch.clear();
    codec.Compress(r, scratch, &stats);
  }
  return stats;
}

RetrainScan ScanForRetrain(const PatternDictionary& dict, std::span<const std::string> records,
                           double threshold) {
  Codec codec(dict);
  RetrainScan scan;
  std::string scratch;
  for (std::size_t i = 0; i < records.size(); ++i) {
    scratch.clear();
    codec.Compress(records[i], scratch, &scan.stats);
    if (!scan.first_trigger && ShouldRetrain(scan.stats, threshold)) scan.first_trigger = i;
  }
  return scan;
}

}  // namespace pbc
