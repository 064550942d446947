// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/entropy.h"

#include <cmath>

#include "pbc/matcher.h"

namespace pbc {

namespace {

double NegPLogP(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double ResidualEntropy(const ResidualSummary& summary) {
  if (summary.bytes == 0) return 0;
  double e = 0;
  for (std::uint64_t c : summary.histogram) {
    e += NegPLogP(static_cast<double>(c) / static_cast<double>(summary.bytes));
  }
  return e;
}

EntropyStats EntropyFromSummaries(std::span<const ResidualSummary> clusters) {
  EntropyStats s;
  std::uint64_t records = 0;
  std::uint64_t bytes = 0;
  for (const auto& c : clusters) {
    records += c.records;
    bytes += c.bytes;
  }
  if (records == 0) return s;
  for (const auto& c : clusters) {
    const double share = static_cast<double>(c.records) / static_cast<double>(records);
    std::array<double, 256> freq{};
    std::size_t alphabet = 0;
    for (std::size_t j = 0; j < 256; ++j) {
      if (c.histogram[j] == 0) continue;
      freq[j] = static_cast<double>(c.histogram[j]) / static_cast<double>(c.bytes);
      ++alphabet;
    }
    const double er = ResidualEntropy(c);
    s.shares.push_back(share);
    s.frequencies.push_back(freq);
    s.alphabet_sizes.push_back(alphabet);
    s.residual_entropies.push_back(er);
    s.pattern_entropy += NegPLogP(share);
    s.residual_entropy += share * er;
  }
  s.mean_residual_length = static_cast<double>(bytes) / static_cast<double>(records);
  return s;
}

ResidualSummary SummarizeResiduals(const Cluster& cluster, std::span<const std::string> records,
                                   std::span<const std::uint64_t> multiplicity) {
  ResidualSummary out;
  std::optional<CompiledPattern> compiled;
  bool has_literal = false;
  for (Symbol s : cluster.pattern) has_literal = has_literal || s != kWildcard;
  if (has_literal) compiled.emplace(PatternFromSymbols(cluster.pattern));

  for (std::uint32_t member : cluster.members) {
    const std::string& record = records[member];
    const std::uint64_t weight = multiplicity.empty() ? 1 : multiplicity[member];
    out.records += weight;
    auto add = [&](std::string_view residual) {
      out.bytes += weight * residual.size();
      for (unsigned char c : residual) out.histogram[c] += weight;
    };
    if (!compiled) {
      add(record);
      continue;
    }
    auto fields = compiled->MatchExtract(record);
    if (!fields) {
      throw Error(ErrorCode::kInvalidArgument, "cluster member does not match its pattern");
    }
    for (auto f : *fields) add(f);
  }
  return out;
}

EntropyStats EntropyOfClustering(std::span<const Cluster> clusters,
                                 std::span<const std::string> records,
                                 std::span<const std::uint64_t> multiplicity) {
  std::vector<ResidualSummary> summaries;
  summaries.reserve(clusters.size());
  for (const auto& c : clusters) summaries.push_back(SummarizeResiduals(c, records, multiplicity));
  return EntropyFromSummaries(summaries);
}

ResidualSummary MergeSummaries(const ResidualSummary& x, const ResidualSummary& y,
                               std::span<const std::uint8_t> dropped_x,
                               std::span<const std::uint8_t> dropped_y) {
  ResidualSummary out;
  out.records = x.records + y.records;
  out.bytes = x.bytes + y.bytes + x.records * dropped_x.size() + y.records * dropped_y.size();
  for (std::size_t j = 0; j < 256; ++j) out.histogram[j] = x.histogram[j] + y.histogram[j];
  for (std::uint8_t b : dropped_x) out.histogram[b] += x.records;
  for (std::uint8_t b : dropped_y) out.histogram[b] += y.records;
  return out;
}

EntropyTerms TermsOf(const ResidualSummary& summary, std::uint64_t total_records) {
  const double share = static_cast<double>(summary.records) / static_cast<double>(total_records);
  return {NegPLogP(share), share * ResidualEntropy(summary), summary.bytes};
}

double EntropyTotals::total() const {
  if (records == 0) return 0;
  return pattern + static_cast<double>(bytes) / static_cast<double>(records) * weighted;
}

double EntropyTotals::DeltaIfMerged(const EntropyTerms& a, const EntropyTerms& b,
                                    const EntropyTerms& merged) const {
  EntropyTotals after = *this;
  after.pattern += merged.neg_plogp - a.neg_plogp - b.neg_plogp;
  after.weighted += merged.weighted - a.weighted - b.weighted;
  after.bytes = bytes - a.bytes - b.bytes + merged.bytes;
  return after.total() - total();
}

}  // namespace pbc
