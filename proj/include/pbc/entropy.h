// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Entropy view of a clustering: a record costs the entropy of its pattern
// label plus, per residual byte, the residual-character entropy of its
// cluster:
//
//   E(S) = E(P) + |R| * E(R),   E(P) = -sum P_i log2 P_i,
//   E(R) = sum P_i E(R_i),      E(R_i) = -sum_j p_ij log2 p_ij
//
// with P_i the share of records in cluster i, p_ij the frequency of byte j
// among cluster i's residual bytes, and |R| the mean residual length.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pbc/model.h"

namespace pbc {

// Residual bytes of one cluster, weighted by record multiplicity.
struct ResidualSummary {
  std::uint64_t records = 0;
  std::uint64_t bytes = 0;
  std::array<std::uint64_t, 256> histogram{};
};

struct EntropyStats {
  std::vector<double> shares;                        // P_i
  std::vector<std::array<double, 256>> frequencies;  // p_ij (all zero for empty residuals)
  std::vector<std::size_t> alphabet_sizes;           // D_i
  std::vector<double> residual_entropies;            // E(R_i)
  double pattern_entropy = 0;                        // E(P)
  double residual_entropy = 0;                       // E(R)
  double mean_residual_length = 0;                   // |R|

  double total() const { return pattern_entropy + mean_residual_length * residual_entropy; }
};

double ResidualEntropy(const ResidualSummary& summary);

EntropyStats EntropyFromSummaries(std::span<const ResidualSummary> clusters);

// Residuals of every member, extracted by matching it against the cluster's
// pattern (a pattern without literals leaves the whole record residual).
ResidualSummary SummarizeResiduals(const Cluster& cluster, std::span<const std::string> records,
                                   std::span<const std::uint64_t> multiplicity);

EntropyStats EntropyOfClustering(std::span<const Cluster> clusters,
                                 std::span<const std::string> records,
                                 std::span<const std::uint64_t> multiplicity);

// Summary of a merged cluster without re-extracting residuals: every literal
// a side drops from its pattern becomes a residual byte of each of its records.
ResidualSummary MergeSummaries(const ResidualSummary& x, const ResidualSummary& y,
                               std::span<const std::uint8_t> dropped_x,
                               std::span<const std::uint8_t> dropped_y);

// The parts of E(S) one cluster contributes, for O(1) merge deltas.
struct EntropyTerms {
  double neg_plogp = 0;  // -P log2 P
  double weighted = 0;   // P * E(R_i)
  std::uint64_t bytes = 0;
};

EntropyTerms TermsOf(const ResidualSummary& summary, std::uint64_t total_records);

// Sums of EntropyTerms over the current clustering.
struct EntropyTotals {
  std::uint64_t records = 0;
  double pattern = 0;
  double weighted = 0;
  std::uint64_t bytes = 0;

  double total() const;
  // E'(S) - E(S) when clusters a and b are replaced by merged.
  double DeltaIfMerged(const EntropyTerms& a, const EntropyTerms& b,
                       const EntropyTerms& merged) const;
};

}  // namespace pbc
