// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Pattern extraction: greedy agglomerative clustering of a record sample.
//
// Every distinct record starts as its own cluster. Each round merges the pair
// with the smallest criterion value, ties broken by the lower slot indices,
// until k clusters remain. The merged pattern always comes from the
// encoding-length traceback; the criterion only decides which pair merges.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbc/entropy.h"
#include "pbc/model.h"
#include "pbc/one_gram.h"

namespace pbc {

struct ExtractOptions {
  std::size_t k = 256;
  MergeCriterion criterion = MergeCriterion::kEncodingLength;
  bool pruning = true;  // lazy 1-gram bounds and early abandon (EL criterion only)
  CostModel cost;
  std::size_t max_distinct_records = 4096;
  std::size_t max_record_bytes = 4096;  // longer records are left out of clustering
};

struct ExtractStats {
  std::uint64_t merges = 0;
  std::uint64_t exact_evaluations = 0;  // DP runs, abandoned ones included
  std::uint64_t one_gram_bounds = 0;
  std::uint64_t abandoned_early = 0;
  std::uint64_t lazy_upgrades = 0;
};

struct DistinctSample {
  std::vector<std::string> records;  // first-occurrence order
  std::vector<std::uint64_t> multiplicity;
  std::uint64_t input_bytes = 0;
};

// Drops empty and over-long records, deduplicates, applies the distinct cap.
DistinctSample PrepareSample(std::span<const std::string> sample, const ExtractOptions& options);

// Clustering state over a distinct sample. Slots keep their index for the
// whole run; a merge of slots a < b leaves the result in a and retires b.
class Agglomerator {
 public:
  Agglomerator(std::vector<std::string> records, std::vector<std::uint64_t> multiplicity);

  std::size_t slot_count() const { return clusters_.size(); }
  std::size_t active_count() const { return active_count_; }
  bool active(std::size_t slot) const { return active_[slot]; }
  const Cluster& cluster(std::size_t slot) const { return clusters_[slot]; }
  const ResidualSummary& residuals(std::size_t slot) const { return residuals_[slot]; }
  std::vector<Cluster> ActiveClusters() const;

  const std::vector<std::string>& records() const { return records_; }
  const std::vector<std::uint64_t>& multiplicity() const { return multiplicity_; }

  // Score of merging slots a and b under the criterion (lower merges first).
  // EncodingLength: EL increment; EditDistance: Levenshtein distance of the
  // pattern strings; Entropy: E'(S) - E(S) over the whole clustering.
  double CriterionDelta(MergeCriterion criterion, std::size_t a, std::size_t b) const;

  // Merges two active slots; returns the EL increment paid.
  std::int64_t Merge(std::size_t a, std::size_t b);

  // Greedy loop down to k active clusters.
  void Run(std::size_t k, MergeCriterion criterion, bool pruning);

  const ExtractStats& stats() const { return stats_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& merge_log() const { return merge_log_; }

 private:
  void RunIntegerCriterion(std::size_t k, MergeCriterion criterion, bool pruning);
  void RunEntropyCriterion(std::size_t k);
  EntropyTotals Totals() const;

  std::vector<std::string> records_;
  std::vector<std::uint64_t> multiplicity_;
  std::uint64_t total_records_ = 0;
  std::vector<Cluster> clusters_;
  std::vector<SymbolHistogram> histograms_;
  std::vector<ResidualSummary> residuals_;
  std::vector<bool> active_;
  std::size_t active_count_ = 0;
  ExtractStats stats_;
  std::vector<std::pair<std::size_t, std::size_t>> merge_log_;
};

struct ExtractResult {
  PatternDictionary dictionary;
  DistinctSample sample;
  std::vector<Cluster> clusters;             // final clusters in slot order
  std::vector<std::uint32_t> pattern_ids;    // per cluster; 0 when it had no literal left
  std::vector<std::pair<std::size_t, std::size_t>> merge_log;
  ExtractStats stats;
};

// Final encoders for a cluster's pattern, inferred from its members' values.
Pattern FinalizePattern(const Cluster& cluster, std::span<const std::string> records);

ExtractResult ExtractPatternsDetailed(std::span<const std::string> sample,
                                      const ExtractOptions& options);
PatternDictionary ExtractPatterns(std::span<const std::string> sample,
                                  const ExtractOptions& options);

}  // namespace pbc
