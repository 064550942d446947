// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/synth.h"

#include <array>

namespace pbc {

namespace {

constexpr std::array<std::string_view, 32> kWords = {
    "alpha",  "bravo",   "charlie", "delta",  "echo",   "foxtrot", "golf",    "hotel",
    "india",  "juliet",  "kilo",    "lima",   "mike",   "november", "oscar",  "papa",
    "quebec", "romeo",   "sierra",  "tango",  "uniform", "victor", "whiskey", "xray",
    "yankee", "zulu",    "amber",   "cobalt", "ember",  "granite", "harbor",  "juniper",
};

// Three-letter tickers keep every record at exactly 88 bytes.
constexpr std::array<std::string_view, 12> kTickers = {
    "IBM", "SAP", "AMD", "BAC", "CVX", "DIS", "JPM", "MMM", "PFE", "XOM", "NKE", "UPS",
};

std::uint64_t Uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::string Trade(std::mt19937_64& rng) {
  std::string r = "{\"symbol\": \"";
  r += kTickers[Uniform(rng, 0, kTickers.size() - 1)];
  r += "\", \"side\": \"";
  r += Uniform(rng, 0, 1) ? 'B' : 'S';
  r += "\", \"quantity\": ";
  r += std::to_string(Uniform(rng, 100, 999));
  r += ", \"price\": ";
  r += std::to_string(Uniform(rng, 10, 99));
  r += '.';
  const std::uint64_t cents = Uniform(rng, 0, 99);
  if (cents < 10) r += '0';
  r += std::to_string(cents);
  r += ", \"timestamp\": ";
  r += std::to_string(Uniform(rng, 1639500000, 1639699999));
  r += '}';
  return r;
}

}  // namespace

std::optional<SynthKind> ParseSynthKind(std::string_view name) {
  for (SynthKind k : {SynthKind::kTrade, SynthKind::kTemplated, SynthKind::kMixed, SynthKind::kFixed,
                      SynthKind::kDrift}) {
    if (SynthKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kTrade:
      return "trade";
    case SynthKind::kTemplated:
      return "templated";
    case SynthKind::kMixed:
      return "mixed";
    case SynthKind::kFixed:
      return "fixed";
    case SynthKind::kDrift:
      return "drift";
  }
  return "unknown";
}

const std::vector<std::string>& SynthTemplates(SynthKind kind) {
  static const std::vector<std::string> kTemplated = {
      "2026-10-%d2 %d2:%d2:%d2 INFO server[%n]: accepted connection from %i port %n",
      "2026-10-%d2 %d2:%d2:%d2 WARN disk %w usage at %n%% on /dev/sd%c",
      "{\"user\":\"%w\",\"id\":%n,\"active\":true,\"score\":%d3.%d2}",
      "GET /api/v1/items/%n?ref=%h8 HTTP/1.1 200 %n",
      "txn=%h8-%h4 amount=%n.%d2 currency=EUR status=OK",
      "session %h8 closed after %n ms by %w",
      "sensor-%d3,temp=%d2.%d1,hum=%d2,ts=%d10",
      "ERROR job %w failed: exit code %n after %n retries",
  };
  static const std::vector<std::string> kMixed = {
      "id=%n;name=%w;val=%n;st=ok",
      "id:%n name:%w val:%n st:ok",
      "name=%w;id=%n;tag=%w;st=no",
      "val=%n;id=%n;name=%w;st=ok",
  };
  static const std::vector<std::string> kFixedT = {
      "user:%d6|score:%d4|tag:%h8|zone:%c%c",
  };
  static const std::vector<std::string> kTradeT = {};
  switch (kind) {
    case SynthKind::kTemplated:
    case SynthKind::kDrift:
      return kTemplated;
    case SynthKind::kMixed:
      return kMixed;
    case SynthKind::kFixed:
      return kFixedT;
    case SynthKind::kTrade:
      break;
  }
  return kTradeT;
}

std::string FillTemplate(std::string_view tmpl, std::mt19937_64& rng) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '%' || i + 1 == tmpl.size()) {
      out.push_back(tmpl[i]);
      continue;
    }
    const char kind = tmpl[++i];
    std::size_t width = 0;
    while (i + 1 < tmpl.size() && tmpl[i + 1] >= '0' && tmpl[i + 1] <= '9') {
      width = width * 10 + static_cast<std::size_t>(tmpl[++i] - '0');
    }
    switch (kind) {
      case 'd':
        for (std::size_t k = 0; k < width; ++k) out.push_back(static_cast<char>('0' + Uniform(rng, 0, 9)));
        break;
      case 'n': {
        const std::uint64_t digits = Uniform(rng, 1, 5);
        std::uint64_t lo = 1;
        for (std::uint64_t k = 1; k < digits; ++k) lo *= 10;
        out += std::to_string(Uniform(rng, digits == 1 ? 0 : lo, lo * 10 - 1));
        break;
      }
      case 'w':
        out += kWords[Uniform(rng, 0, kWords.size() - 1)];
        break;
      case 'h':
        for (std::size_t k = 0; k < width; ++k) out.push_back("0123456789abcdef"[Uniform(rng, 0, 15)]);
        break;
      case 'i':
        for (int k = 0; k < 4; ++k) {
          if (k) out.push_back('.');
          out += std::to_string(Uniform(rng, 1, 254));
        }
        break;
      case 'c':
        out.push_back(static_cast<char>('a' + Uniform(rng, 0, 25)));
        break;
      case '%':
        out.push_back('%');
        break;
      default:
        out.push_back('%');
        out.push_back(kind);
        break;
    }
  }
  return out;
}

std::vector<std::string> GenerateCorpus(SynthKind kind, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  const auto& templates = SynthTemplates(kind);
  for (std::size_t i = 0; i < count; ++i) {
    if (kind == SynthKind::kTrade) {
      out.push_back(Trade(rng));
      continue;
    }
    // Drift: templates 0..3 in the first half, 4..7 in the second.
    const std::size_t pick = kind == SynthKind::kDrift ? Uniform(rng, 0, 3) + (i < count / 2 ? 0 : 4)
                                                       : Uniform(rng, 0, templates.size() - 1);
    out.push_back(FillTemplate(templates[pick], rng));
  }
  return out;
}

}  // namespace pbc
