// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <array>
#include <cstdint>

#include "pbc/model.h"

namespace pbc {

// Multiset of the symbols of one pattern string (bytes plus the wildcard).
class SymbolHistogram {
 public:
  SymbolHistogram() { counts_.fill(0); }
  static SymbolHistogram FromPattern(const PatternString& pattern);

  std::uint32_t count(Symbol s) const { return counts_[s]; }
  std::uint32_t wildcards() const { return counts_[kWildcard]; }
  std::uint32_t total() const { return total_; }

 private:
  std::array<std::uint32_t, 257> counts_;
  std::uint32_t total_ = 0;
};

// Admissible lower bound on MinElIncrementFast for the same clusters.
//
// Every literal one side holds in surplus over the other must end up in a
// residual field and cost one byte per record of its cluster. Wildcards of
// either side act as jokers: each cancels one unit of surplus, spent on the
// heavier cluster first. For wildcard-free singletons this is the 1-gram
// distance |MS1 + MS2| - 2|MS1 & MS2|. Holds for pattern strings without
// adjacent wildcards, which is the only shape clusters take.
std::int64_t OneGramDistance(const SymbolHistogram& h_x, const SymbolHistogram& h_y,
                             std::uint64_t size_x, std::uint64_t size_y);

}  // namespace pbc
