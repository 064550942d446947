// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/model.h"

namespace pbc {

// A pattern prepared for whole-record matching: maximal literal runs with
// the field constraints between them.
class CompiledPattern {
 public:
  explicit CompiledPattern(Pattern pattern);

  // Field values in pattern order, or nullopt when the record does not match.
  // Fields are lazy: each takes the shortest feasible value first, so the
  // reported segmentation is the lexicographically earliest one.
  std::optional<std::vector<std::string_view>> MatchExtract(std::string_view record) const;

  // Cheap necessary condition for a match.
  bool MayMatch(std::string_view record) const;

  const Pattern& pattern() const { return pattern_; }
  std::string_view longest_literal() const { return longest_literal_; }

 private:
  struct Item {
    bool is_field = false;
    FieldEncoder encoder;
    std::string literal;
  };

  bool Match(std::string_view record, std::size_t item, std::size_t pos,
             std::vector<std::string_view>& fields, std::vector<std::uint8_t>& failed) const;

  Pattern pattern_;
  std::vector<Item> items_;
  std::vector<std::size_t> field_slot_;  // item index -> field ordinal
  std::size_t min_length_ = 0;
  std::string longest_literal_;
};

struct Selection {
  std::uint32_t pattern_id = 0;
  std::vector<std::string_view> fields;
};

// Tries dictionary patterns in precedence order: more literal bytes first,
// then fewer fields, then lower id. The first match wins.
class Matcher {
 public:
  explicit Matcher(const PatternDictionary& dict);

  std::optional<Selection> Select(std::string_view record, bool prefilter = true) const;

  const CompiledPattern& compiled(std::uint32_t id) const { return compiled_.at(id - 1); }
  std::size_t size() const { return compiled_.size(); }

 private:
  std::vector<CompiledPattern> compiled_;  // by id - 1
  std::vector<std::uint32_t> order_;       // ids in precedence order
};

}  // namespace pbc
