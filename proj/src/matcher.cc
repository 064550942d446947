// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/matcher.h"

#include <algorithm>
#include <numeric>

#include "pbc/encoders.h"

namespace pbc {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

CompiledPattern::CompiledPattern(Pattern pattern) : pattern_(std::move(pattern)) {
  for (const auto& t : pattern_.tokens()) {
    if (t.is_field()) {
      items_.push_back(Item{true, t.encoder(), {}});
      switch (t.encoder().kind) {
        case EncoderKind::kChar:
        case EncoderKind::kInt: min_length_ += t.encoder().n; break;
        case EncoderKind::kVarint: min_length_ += 1; break;
        case EncoderKind::kVarchar: break;
      }
      continue;
    }
    if (items_.empty() || items_.back().is_field) items_.push_back(Item{false, {}, {}});
    items_.back().literal.push_back(static_cast<char>(t.literal()));
    ++min_length_;
  }
  field_slot_.assign(items_.size(), 0);
  std::size_t ordinal = 0;
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (items_[k].is_field) {
      field_slot_[k] = ordinal++;
    } else if (items_[k].literal.size() > longest_literal_.size()) {
      longest_literal_ = items_[k].literal;
    }
  }
}

bool CompiledPattern::MayMatch(std::string_view record) const {
  return record.size() >= min_length_ &&
         (longest_literal_.empty() || record.find(longest_literal_) != std::string_view::npos);
}

std::optional<std::vector<std::string_view>> CompiledPattern::MatchExtract(
    std::string_view record) const {
  if (record.size() < min_length_) return std::nullopt;
  std::vector<std::string_view> fields(pattern_.field_count());
  std::vector<std::uint8_t> failed(pattern_.field_count() * (record.size() + 1), 0);
  if (!Match(record, 0, 0, fields, failed)) return std::nullopt;
  return fields;
}

bool CompiledPattern::Match(std::string_view record, std::size_t k, std::size_t pos,
                            std::vector<std::string_view>& fields,
                            std::vector<std::uint8_t>& failed) const {
  if (k == items_.size()) return pos == record.size();
  const Item& item = items_[k];
  if (!item.is_field) {
    if (record.substr(pos, item.literal.size()) != item.literal) return false;
    return Match(record, k + 1, pos + item.literal.size(), fields, failed);
  }

  const std::size_t slot = field_slot_[k];
  std::uint8_t& memo = failed[slot * (record.size() + 1) + pos];
  if (memo) return false;

  const FieldEncoder& enc = item.encoder;
  if (k + 1 == items_.size()) {
    const std::string_view value = record.substr(pos);
    if (Conforms(value, enc)) {
      fields[slot] = value;
      return true;
    }
    memo = 1;
    return false;
  }

  const std::string& next = items_[k + 1].literal;
  auto attempt = [&](std::size_t end) {
    if (record.substr(end, next.size()) != next) return false;
    fields[slot] = record.substr(pos, end - pos);
    return Match(record, k + 2, end + next.size(), fields, failed);
  };

  switch (enc.kind) {
    case EncoderKind::kVarchar:
      for (std::size_t end = record.find(next, pos); end != std::string_view::npos;
           end = record.find(next, end + 1)) {
        if (attempt(end)) return true;
      }
      break;
    case EncoderKind::kChar:
    case EncoderKind::kInt:
      if (pos + enc.n <= record.size() && Conforms(record.substr(pos, enc.n), enc) &&
          attempt(pos + enc.n)) {
        return true;
      }
      break;
    case EncoderKind::kVarint:
      for (std::size_t len = 1; len <= kMaxVarintDigits && pos + len <= record.size(); ++len) {
        if (!IsDigit(record[pos + len - 1])) break;
        if (attempt(pos + len)) return true;
        if (record[pos] == '0') break;  // only "0" itself may start with a zero
      }
      break;
  }
  memo = 1;
  return false;
}

Matcher::Matcher(const PatternDictionary& dict) {
  compiled_.reserve(dict.size());
  for (const auto& p : dict.patterns()) compiled_.emplace_back(p);
  order_.resize(compiled_.size());
  std::iota(order_.begin(), order_.end(), 1u);
  std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Pattern& pa = compiled_[a - 1].pattern();
    const Pattern& pb = compiled_[b - 1].pattern();
    if (pa.literal_count() != pb.literal_count()) return pa.literal_count() > pb.literal_count();
    if (pa.field_count() != pb.field_count()) return pa.field_count() < pb.field_count();
    return a < b;
  });
}

std::optional<Selection> Matcher::Select(std::string_view record, bool prefilter) const {
  for (std::uint32_t id : order_) {
    const CompiledPattern& cp = compiled_[id - 1];
    if (prefilter && !cp.MayMatch(record)) continue;
    if (auto fields = cp.MatchExtract(record)) return Selection{id, std::move(*fields)};
  }
  return std::nullopt;
}

}  // namespace pbc
