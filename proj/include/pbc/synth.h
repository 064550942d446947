// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Seeded synthetic corpora built from templates with typed value slots.
//
// Slot syntax inside a template: %dN (N random digits), %n (1..5 digit
// number without a leading zero), %w (word), %hN (N lowercase hex digits),
// %i (IPv4 address), %c (one lowercase letter), %% (a literal percent).

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace pbc {

enum class SynthKind : std::uint8_t {
  kTrade,      // JSON trade records, 88 bytes each
  kTemplated,  // 8 log/JSON/URL templates
  kMixed,      // 4 templates sharing most of their characters
  kFixed,      // one template with fixed-width values
  kDrift,      // first half from 4 templates, second half from 4 others
};

std::optional<SynthKind> ParseSynthKind(std::string_view name);
std::string_view SynthKindName(SynthKind kind);

const std::vector<std::string>& SynthTemplates(SynthKind kind);

std::string FillTemplate(std::string_view tmpl, std::mt19937_64& rng);

std::vector<std::string> GenerateCorpus(SynthKind kind, std::size_t count, std::uint64_t seed);

}  // namespace pbc
