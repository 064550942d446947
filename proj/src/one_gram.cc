// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/one_gram.h"

#include <algorithm>
#include <utility>

namespace pbc {

SymbolHistogram SymbolHistogram::FromPattern(const PatternString& pattern) {
  SymbolHistogram h;
  for (Symbol s : pattern) ++h.counts_[s];
  h.total_ = static_cast<std::uint32_t>(pattern.size());
  return h;
}

std::int64_t OneGramDistance(const SymbolHistogram& h_x, const SymbolHistogram& h_y,
                             std::uint64_t size_x, std::uint64_t size_y) {
  std::int64_t surplus_x = 0;
  std::int64_t surplus_y = 0;
  for (Symbol s = 0; s < kWildcard; ++s) {
    const auto cx = static_cast<std::int64_t>(h_x.count(s));
    const auto cy = static_cast<std::int64_t>(h_y.count(s));
    if (cx > cy) {
      surplus_x += cx - cy;
    } else {
      surplus_y += cy - cx;
    }
  }
  std::int64_t jokers = static_cast<std::int64_t>(h_x.wildcards()) + h_y.wildcards();

  std::pair<std::int64_t, std::int64_t> heavy{static_cast<std::int64_t>(size_x), surplus_x};
  std::pair<std::int64_t, std::int64_t> light{static_cast<std::int64_t>(size_y), surplus_y};
  if (light.first > heavy.first) std::swap(heavy, light);

  std::int64_t bound = 0;
  for (auto [weight, surplus] : {heavy, light}) {
    const std::int64_t cancelled = std::min(surplus, jokers);
    jokers -= cancelled;
    bound += (surplus - cancelled) * weight;
  }
  return bound;
}

}  // namespace pbc
