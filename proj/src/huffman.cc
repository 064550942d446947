// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/huffman.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace pbc {

namespace {

std::array<std::uint8_t, kHuffmanSymbols> BuildLengths(
    const std::array<std::uint64_t, kHuffmanSymbols>& freq) {
  // Node: (weight, smallest symbol below it, node index). The symbol keeps
  // tie-breaking deterministic.
  using Entry = std::tuple<std::uint64_t, std::uint16_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<std::size_t> parent(2 * kHuffmanSymbols, 0);
  for (std::size_t s = 0; s < kHuffmanSymbols; ++s) {
    heap.emplace(freq[s], static_cast<std::uint16_t>(s), s);
  }
  std::size_t next = kHuffmanSymbols;
  while (heap.size() > 1) {
    auto [w1, s1, n1] = heap.top();
    heap.pop();
    auto [w2, s2, n2] = heap.top();
    heap.pop();
    parent[n1] = next;
    parent[n2] = next;
    heap.emplace(w1 + w2, std::min(s1, s2), next);
    ++next;
  }
  const std::size_t root = next - 1;
  std::array<std::uint8_t, kHuffmanSymbols> lengths{};
  for (std::size_t s = 0; s < kHuffmanSymbols; ++s) {
    std::size_t depth = 0;
    for (std::size_t node = s; node != root; node = parent[node]) ++depth;
    lengths[s] = static_cast<std::uint8_t>(std::min<std::size_t>(depth, 255));
  }
  return lengths;
}

}  // namespace

HuffmanTable HuffmanFromFrequencies(std::span<const std::uint64_t, kHuffmanSymbols> input) {
  std::array<std::uint64_t, kHuffmanSymbols> freq{};
  for (std::size_t s = 0; s < kHuffmanSymbols; ++s) freq[s] = std::max<std::uint64_t>(input[s], 1);
  for (;;) {
    HuffmanTable t;
    t.lengths = BuildLengths(freq);
    if (*std::max_element(t.lengths.begin(), t.lengths.end()) <= kMaxCodeLength) return t;
    // Flatten the distribution until the deepest code fits.
    for (auto& f : freq) f = std::max<std::uint64_t>(f / 2, 1);
  }
}

HuffmanTable TrainHuffman(std::span<const std::string> payloads) {
  std::array<std::uint64_t, kHuffmanSymbols> freq{};
  freq.fill(1);
  for (const auto& p : payloads) {
    for (unsigned char c : p) ++freq[c];
    ++freq[kHuffmanEndMarker];
  }
  return HuffmanFromFrequencies(freq);
}

void ValidateHuffmanTable(const HuffmanTable& table) {
  std::uint64_t kraft = 0;
  for (std::uint8_t len : table.lengths) {
    if (len < 1 || len > kMaxCodeLength) {
      throw Error(ErrorCode::kMalformedToken, "Huffman code length out of range");
    }
    kraft += std::uint64_t{1} << (kMaxCodeLength - len);
  }
  if (kraft > (std::uint64_t{1} << kMaxCodeLength)) {
    throw Error(ErrorCode::kMalformedToken, "Huffman code lengths violate the Kraft inequality");
  }
}

HuffmanCoder::HuffmanCoder(const HuffmanTable& table) {
  ValidateHuffmanTable(table);
  lengths_ = table.lengths;
  sorted_.resize(kHuffmanSymbols);
  for (std::uint16_t s = 0; s < kHuffmanSymbols; ++s) sorted_[s] = s;
  std::stable_sort(sorted_.begin(), sorted_.end(),
                   [&](std::uint16_t a, std::uint16_t b) { return lengths_[a] < lengths_[b]; });
  for (std::uint8_t len : lengths_) ++count_[len];

  std::uint32_t code = 0;
  std::uint32_t index = 0;
  for (std::uint32_t len = 1; len <= kMaxCodeLength; ++len) {
    first_code_[len] = code;
    offset_[len] = index;
    code = (code + count_[len]) << 1;
    index += count_[len];
  }
  std::array<std::uint32_t, kMaxCodeLength + 2> next = first_code_;
  for (std::uint16_t s : sorted_) codes_[s] = next[lengths_[s]]++;
}

void HuffmanCoder::Encode(std::string_view input, std::string& out) const {
  std::uint64_t acc = 0;
  unsigned bits = 0;
  auto put = [&](std::uint16_t symbol) {
    acc = (acc << lengths_[symbol]) | codes_[symbol];
    bits += lengths_[symbol];
    while (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xff));
    }
  };
  for (unsigned char c : input) put(c);
  put(kHuffmanEndMarker);
  if (bits > 0) out.push_back(static_cast<char>((acc << (8 - bits)) & 0xff));
}

std::size_t HuffmanCoder::EncodedSize(std::string_view input) const {
  std::uint64_t bits = lengths_[kHuffmanEndMarker];
  for (unsigned char c : input) bits += lengths_[c];
  return static_cast<std::size_t>((bits + 7) / 8);
}

std::string HuffmanCoder::Decode(ByteReader& in) const {
  std::string out;
  std::uint32_t code = 0;
  std::uint32_t len = 0;
  for (;;) {
    const std::uint8_t byte = in.ReadByte();
    for (int bit = 7; bit >= 0; --bit) {
      code = (code << 1) | ((byte >> bit) & 1u);
      ++len;
      if (len > kMaxCodeLength) throw Error(ErrorCode::kMalformedPayload, "invalid Huffman code");
      if (code - first_code_[len] < count_[len]) {
        const std::uint16_t symbol = sorted_[offset_[len] + (code - first_code_[len])];
        if (symbol == kHuffmanEndMarker) return out;
        out.push_back(static_cast<char>(symbol));
        code = 0;
        len = 0;
      }
    }
  }
}

}  // namespace pbc
