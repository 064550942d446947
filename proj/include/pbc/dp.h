// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Encoding-length increment of merging two clusters.
//
// Each cluster is summarized by its pattern string (literal bytes plus
// wildcards) and its record count. Merging aligns the two pattern strings:
// equal literals on the diagonal stay in the joint pattern, everything else
// is pushed into residual fields. Under the VARCHAR cost model a merged field
// costs one header byte per record of both clusters, each literal pushed into
// a field costs one byte per record of its own cluster, and each wildcard
// absorbed into a field refunds that cluster's header byte.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pbc/model.h"

namespace pbc {

enum class CellType : std::uint8_t { kPattern, kResidual };
enum class Step : std::uint8_t { kStart, kDiagonal, kUp, kLeft };

// (n+1) x (m+1) tables; kUp consumes cs_x[i-1], kLeft consumes cs_y[j-1].
class DpTable {
 public:
  DpTable(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), state_(rows * cols, 0),
        type_(rows * cols, CellType::kPattern), step_(rows * cols, Step::kStart) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& state(std::size_t i, std::size_t j) { return state_[i * cols_ + j]; }
  std::int64_t state(std::size_t i, std::size_t j) const { return state_[i * cols_ + j]; }
  CellType& type(std::size_t i, std::size_t j) { return type_[i * cols_ + j]; }
  CellType type(std::size_t i, std::size_t j) const { return type_[i * cols_ + j]; }
  Step& step(std::size_t i, std::size_t j) { return step_[i * cols_ + j]; }
  Step step(std::size_t i, std::size_t j) const { return step_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> state_;
  std::vector<CellType> type_;
  std::vector<Step> step_;
};

// One transition that routes new_char into a residual field. size_x is the
// record count of the cluster contributing new_char.
std::int64_t UpdateState(std::int64_t cur_state, CellType type, Symbol new_char,
                         std::uint64_t size_x, std::uint64_t size_y);

DpTable FillDpTable(const PatternString& cs_x, const PatternString& cs_y,
                    std::uint64_t size_x, std::uint64_t size_y);

struct MergeOutcome {
  std::int64_t increment = 0;
  PatternString merged;  // wildcards mark fields; adjacent fields collapsed
  // Literals each side pushes into residual fields.
  std::vector<std::uint8_t> dropped_x;
  std::vector<std::uint8_t> dropped_y;
};

// O(n*m) DP plus traceback. Throws EmptyPattern if either input is empty.
MergeOutcome MinElIncrementFast(const PatternString& cs_x, const PatternString& cs_y,
                                std::uint64_t size_x, std::uint64_t size_y);

struct IncrementBound {
  std::int64_t value = 0;
  bool exact = false;  // false: value is a lower bound strictly above the threshold
};

// Same value as MinElIncrementFast without traceback, using two rolling rows.
// After each row, every cell's state plus a lower bound on the cost of the
// remaining suffixes is compared with abandon_above; when all exceed it, gives
// up and returns the smallest such sum as a lower bound.
IncrementBound MinElIncrementBounded(const PatternString& cs_x, const PatternString& cs_y,
                                     std::uint64_t size_x, std::uint64_t size_y,
                                     std::optional<std::int64_t> abandon_above);

inline constexpr std::size_t kOracleMaxTokens = 12;

// General DP that, for every cell, tries every previous cell as the start of
// the last alignment block. Exponential-ish; test scale only. Throws TooLarge
// beyond kOracleMaxTokens per side.
std::int64_t MinElIncrementOracle(const PatternString& cs_x, const PatternString& cs_y,
                                  std::uint64_t size_x, std::uint64_t size_y);

// Unit-cost Levenshtein distance; the wildcard is an ordinary symbol.
std::int64_t EditDistance(const PatternString& a, const PatternString& b);

}  // namespace pbc
