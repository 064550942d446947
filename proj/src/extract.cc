// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/extract.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

#include "pbc/dp.h"
#include "pbc/encoders.h"
#include "pbc/matcher.h"

namespace pbc {

DistinctSample PrepareSample(std::span<const std::string> sample, const ExtractOptions& options) {
  DistinctSample out;
  std::unordered_map<std::string_view, std::size_t> index;
  for (const auto& r : sample) {
    out.input_bytes += r.size();
    if (r.empty() || r.size() > options.max_record_bytes) continue;
    if (auto it = index.find(r); it != index.end()) {
      ++out.multiplicity[it->second];
      continue;
    }
    if (out.records.size() >= options.max_distinct_records) continue;
    index.emplace(r, out.records.size());
    out.records.push_back(r);
    out.multiplicity.push_back(1);
  }
  return out;
}

Agglomerator::Agglomerator(std::vector<std::string> records, std::vector<std::uint64_t> multiplicity)
    : records_(std::move(records)), multiplicity_(std::move(multiplicity)) {
  if (multiplicity_.empty()) multiplicity_.assign(records_.size(), 1);
  if (multiplicity_.size() != records_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "multiplicity and records differ in length");
  }
  const std::size_t n = records_.size();
  clusters_.resize(n);
  histograms_.resize(n);
  residuals_.resize(n);
  active_.assign(n, true);
  active_count_ = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (records_[i].empty()) throw Error(ErrorCode::kInvalidArgument, "empty record in sample");
    Cluster& c = clusters_[i];
    c.members = {static_cast<std::uint32_t>(i)};
    c.pattern = SymbolsFromBytes(records_[i]);
    c.size = multiplicity_[i];
    c.cached_el = 0;
    histograms_[i] = SymbolHistogram::FromPattern(c.pattern);
    residuals_[i].records = c.size;
    total_records_ += c.size;
  }
}

std::vector<Cluster> Agglomerator::ActiveClusters() const {
  std::vector<Cluster> out;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (active_[i]) out.push_back(clusters_[i]);
  }
  return out;
}

EntropyTotals Agglomerator::Totals() const {
  EntropyTotals t;
  t.records = total_records_;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (!active_[i]) continue;
    const EntropyTerms terms = TermsOf(residuals_[i], total_records_);
    t.pattern += terms.neg_plogp;
    t.weighted += terms.weighted;
    t.bytes += terms.bytes;
  }
  return t;
}

double Agglomerator::CriterionDelta(MergeCriterion criterion, std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  const Cluster& x = clusters_[a];
  const Cluster& y = clusters_[b];
  switch (criterion) {
    case MergeCriterion::kEncodingLength:
      return static_cast<double>(
          MinElIncrementBounded(x.pattern, y.pattern, x.size, y.size, std::nullopt).value);
    case MergeCriterion::kEditDistance:
      return static_cast<double>(EditDistance(x.pattern, y.pattern));
    case MergeCriterion::kEntropy: {
      const MergeOutcome m = MinElIncrementFast(x.pattern, y.pattern, x.size, y.size);
      const ResidualSummary merged =
          MergeSummaries(residuals_[a], residuals_[b], m.dropped_x, m.dropped_y);
      return Totals().DeltaIfMerged(TermsOf(residuals_[a], total_records_),
                                    TermsOf(residuals_[b], total_records_),
                                    TermsOf(merged, total_records_));
    }
  }
  return 0;
}

std::int64_t Agglomerator::Merge(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  if (a == b || !active_[a] || !active_[b]) {
    throw Error(ErrorCode::kInvalidArgument, "merge needs two distinct active clusters");
  }
  Cluster& x = clusters_[a];
  Cluster& y = clusters_[b];
  MergeOutcome m = MinElIncrementFast(x.pattern, y.pattern, x.size, y.size);
  residuals_[a] = MergeSummaries(residuals_[a], residuals_[b], m.dropped_x, m.dropped_y);

  x.members.insert(x.members.end(), y.members.begin(), y.members.end());
  std::sort(x.members.begin(), x.members.end());
  x.pattern = std::move(m.merged);
  x.size += y.size;
  x.cached_el += y.cached_el + m.increment;
  histograms_[a] = SymbolHistogram::FromPattern(x.pattern);

  y = Cluster{};
  residuals_[b] = ResidualSummary{};
  active_[b] = false;
  --active_count_;
  ++stats_.merges;
  merge_log_.emplace_back(a, b);
  return m.increment;
}

void Agglomerator::Run(std::size_t k, MergeCriterion criterion, bool pruning) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (active_count_ < k) {
    throw Error(ErrorCode::kInsufficientSample,
                std::to_string(active_count_) + " distinct records for k = " + std::to_string(k));
  }
  if (active_count_ == k) return;
  if (criterion == MergeCriterion::kEntropy) {
    RunEntropyCriterion(k);
  } else {
    RunIntegerCriterion(k, criterion, pruning && criterion == MergeCriterion::kEncodingLength);
  }
}

namespace {

// How much is known about a pair's value.
enum class Known : std::uint8_t {
  kOneGram = 0,   // 1-gram lower bound
  kAbandoned = 1, // lower bound from an abandoned DP
  kExact = 2,
};

// Pair entry: value << 2 | Known, packed to keep the triangle compact.
class PairTable {
 public:
  explicit PairTable(std::size_t n) : n_(n), cells_(n * (n - 1) / 2, 0) {}

  void Set(std::size_t i, std::size_t j, std::int64_t value, Known known) {
    cells_[Index(i, j)] = (static_cast<std::uint64_t>(value) << 2) | static_cast<std::uint64_t>(known);
  }
  std::int64_t Value(std::size_t i, std::size_t j) const {
    return static_cast<std::int64_t>(cells_[Index(i, j)] >> 2);
  }
  Known State(std::size_t i, std::size_t j) const { return static_cast<Known>(cells_[Index(i, j)] & 3u); }

 private:
  std::size_t Index(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::vector<std::uint64_t> cells_;
};

struct RowBest {
  std::int64_t value = 0;
  std::size_t partner = 0;
  bool exact = false;
  bool valid = false;
};

}  // namespace

void Agglomerator::RunIntegerCriterion(std::size_t k, MergeCriterion criterion, bool pruning) {
  const std::size_t n = clusters_.size();
  PairTable table(n);
  std::vector<RowBest> best(n);

  // Fills (i, j), i < j: exact without pruning, else the 1-gram bound only.
  // Exact values are computed later, and only for entries that reach the
  // front of the merge order.
  auto evaluate = [&](std::size_t i, std::size_t j) {
    const Cluster& x = clusters_[i];
    const Cluster& y = clusters_[j];
    if (criterion == MergeCriterion::kEditDistance) {
      table.Set(i, j, EditDistance(x.pattern, y.pattern), Known::kExact);
    } else if (!pruning) {
      ++stats_.exact_evaluations;
      table.Set(i, j, MinElIncrementBounded(x.pattern, y.pattern, x.size, y.size, std::nullopt).value,
                Known::kExact);
    } else {
      ++stats_.one_gram_bounds;
      table.Set(i, j, OneGramDistance(histograms_[i], histograms_[j], x.size, y.size), Known::kOneGram);
    }
  };

  auto recompute_row = [&](std::size_t r) {
    RowBest b;
    for (std::size_t j = r + 1; j < n; ++j) {
      if (!active_[j]) continue;
      const std::int64_t v = table.Value(r, j);
      if (!b.valid || v < b.value) b = RowBest{v, j, table.State(r, j) == Known::kExact, true};
    }
    best[r] = b;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) evaluate(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) recompute_row(i);

  while (active_count_ > k) {
    // Smallest (value, row, partner). A bound at the front is tightened until
    // an exact entry wins, so the choice equals that of an unpruned search.
    std::size_t row = 0;
    for (;;) {
      bool found = false;
      std::optional<std::int64_t> runner_up;
      for (std::size_t r = 0; r < n; ++r) {
        if (!active_[r] || !best[r].valid) continue;
        if (!found || best[r].value < best[row].value) {
          if (found) runner_up = best[row].value;
          row = r;
          found = true;
        } else if (!runner_up || best[r].value < *runner_up) {
          runner_up = best[r].value;
        }
      }
      if (best[row].exact) break;

      const std::size_t j = best[row].partner;
      const Cluster& x = clusters_[row];
      const Cluster& y = clusters_[j];
      ++stats_.lazy_upgrades;
      ++stats_.exact_evaluations;
      // First try: give up once the entry is sure to fall behind the runner-up.
      // A second visit computes the exact value.
      const bool first = table.State(row, j) == Known::kOneGram;
      const IncrementBound r =
          MinElIncrementBounded(x.pattern, y.pattern, x.size, y.size, first ? runner_up : std::nullopt);
      if (r.exact) {
        table.Set(row, j, r.value, Known::kExact);
      } else {
        ++stats_.abandoned_early;
        table.Set(row, j, std::max(r.value, table.Value(row, j)), Known::kAbandoned);
      }
      recompute_row(row);
    }

    const std::size_t a = row;
    const std::size_t b = best[row].partner;
    Merge(a, b);

    for (std::size_t t = 0; t < n; ++t) {
      if (!active_[t] || t == a) continue;
      if (t < a) {
        evaluate(t, a);
      } else {
        evaluate(a, t);
      }
    }

    recompute_row(a);
    for (std::size_t r = 0; r < b; ++r) {
      if (!active_[r] || r == a) continue;
      if (best[r].partner == a || best[r].partner == b) {
        recompute_row(r);
      } else if (r < a) {
        const std::int64_t v = table.Value(r, a);
        if (!best[r].valid || v < best[r].value || (v == best[r].value && a < best[r].partner)) {
          best[r] = RowBest{v, a, table.State(r, a) == Known::kExact, true};
        }
      }
    }
    best[b] = RowBest{};
  }
}

void Agglomerator::RunEntropyCriterion(std::size_t k) {
  const std::size_t n = clusters_.size();
  std::vector<EntropyTerms> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = TermsOf(residuals_[i], total_records_);

  // The merged cluster's terms depend on the pair only, so they survive
  // until either side changes.
  std::vector<std::optional<EntropyTerms>> merged(n * (n - 1) / 2);
  auto index = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  auto merged_terms = [&](std::size_t i, std::size_t j) -> const EntropyTerms& {
    auto& slot = merged[index(i, j)];
    if (!slot) {
      const Cluster& x = clusters_[i];
      const Cluster& y = clusters_[j];
      const MergeOutcome m = MinElIncrementFast(x.pattern, y.pattern, x.size, y.size);
      ++stats_.exact_evaluations;
      slot = TermsOf(MergeSummaries(residuals_[i], residuals_[j], m.dropped_x, m.dropped_y),
                     total_records_);
    }
    return *slot;
  };

  while (active_count_ > k) {
    const EntropyTotals totals = Totals();
    double best = 0;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active_[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active_[j]) continue;
        const double g = totals.DeltaIfMerged(terms[i], terms[j], merged_terms(i, j));
        if (!found || g < best) {
          best = g;
          best_i = i;
          best_j = j;
          found = true;
        }
      }
    }
    Merge(best_i, best_j);
    terms[best_i] = TermsOf(residuals_[best_i], total_records_);
    for (std::size_t t = 0; t < n; ++t) {
      if (t != best_i) merged[index(t, best_i)].reset();
      if (t != best_j) merged[index(t, best_j)].reset();
    }
  }
}

Pattern FinalizePattern(const Cluster& cluster, std::span<const std::string> records) {
  Pattern pattern = PatternFromSymbols(cluster.pattern);
  if (pattern.field_count() == 0) return pattern;

  const CompiledPattern compiled(pattern);
  std::vector<std::vector<std::string_view>> values(pattern.field_count());
  for (std::uint32_t member : cluster.members) {
    auto fields = compiled.MatchExtract(records[member]);
    if (!fields) throw Error(ErrorCode::kInvalidArgument, "cluster member does not match its pattern");
    for (std::size_t f = 0; f < fields->size(); ++f) values[f].push_back((*fields)[f]);
  }
  for (std::size_t f = 0; f < values.size(); ++f) {
    pattern = pattern.WithEncoder(f, InferEncoder(std::span<const std::string_view>(values[f])));
  }
  return pattern;
}

ExtractResult ExtractPatternsDetailed(std::span<const std::string> sample,
                                      const ExtractOptions& options) {
  if (options.cost.header_bytes_per_field != 1) {
    throw Error(ErrorCode::kInvalidArgument, "clustering supports 1-byte field headers only");
  }
  if (options.k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");

  ExtractResult out;
  out.sample = PrepareSample(sample, options);
  if (out.sample.records.size() < options.k) {
    throw Error(ErrorCode::kInsufficientSample,
                std::to_string(out.sample.records.size()) + " distinct records for k = " +
                    std::to_string(options.k));
  }

  Agglomerator agg(out.sample.records, out.sample.multiplicity);
  agg.Run(options.k, options.criterion, options.pruning);

  for (std::size_t s = 0; s < agg.slot_count(); ++s) {
    if (!agg.active(s)) continue;
    const Cluster& c = agg.cluster(s);
    out.clusters.push_back(c);
    const bool has_literal =
        std::any_of(c.pattern.begin(), c.pattern.end(), [](Symbol x) { return x != kWildcard; });
    out.pattern_ids.push_back(
        has_literal ? out.dictionary.Add(FinalizePattern(c, out.sample.records)) : 0);
  }
  out.dictionary.set_training(TrainingInfo{out.sample.input_bytes, options.criterion,
                                           static_cast<std::uint32_t>(options.k)});
  out.merge_log = agg.merge_log();
  out.stats = agg.stats();
  return out;
}

PatternDictionary ExtractPatterns(std::span<const std::string> sample,
                                  const ExtractOptions& options) {
  return ExtractPatternsDetailed(sample, options).dictionary;
}

}  // namespace pbc
