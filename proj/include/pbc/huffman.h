// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// Static canonical Huffman coding over bytes plus an end marker. Each
// payload is coded on its own (no state carries across records).

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbc/bytes.h"
#include "pbc/model.h"

namespace pbc {

inline constexpr std::uint8_t kMaxCodeLength = 24;

// Add-one smoothed byte frequencies of the payloads; one end marker per
// payload. Code lengths are capped at kMaxCodeLength.
HuffmanTable TrainHuffman(std::span<const std::string> payloads);
HuffmanTable HuffmanFromFrequencies(std::span<const std::uint64_t, kHuffmanSymbols> freq);

// Throws MalformedToken unless every length is in 1..kMaxCodeLength and the
// Kraft sum is at most 1.
void ValidateHuffmanTable(const HuffmanTable& table);

class HuffmanCoder {
 public:
  explicit HuffmanCoder(const HuffmanTable& table);

  // Codes bytes then the end marker, MSB first, zero-padded to a byte.
  void Encode(std::string_view input, std::string& out) const;
  std::size_t EncodedSize(std::string_view input) const;
  // Reads exactly the bytes Encode produced. Throws Truncated or
  // MalformedPayload.
  std::string Decode(ByteReader& in) const;

 private:
  std::array<std::uint32_t, kHuffmanSymbols> codes_{};
  std::array<std::uint8_t, kHuffmanSymbols> lengths_{};
  std::array<std::uint32_t, kMaxCodeLength + 2> first_code_{};
  std::array<std::uint32_t, kMaxCodeLength + 2> count_{};
  std::array<std::uint32_t, kMaxCodeLength + 2> offset_{};
  std::vector<std::uint16_t> sorted_;
};

}  // namespace pbc
