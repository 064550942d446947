// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/store.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "pbc/dictio.h"

namespace pbc {

namespace {

constexpr std::size_t kChecksumBytes = 4;

BenchResult Finish(BenchResult r) {
  r.lookups_per_second = r.seconds > 0 ? static_cast<double>(r.lookups) / r.seconds : 0;
  r.bytes_per_lookup =
      r.lookups > 0 ? static_cast<double>(r.bytes_touched) / static_cast<double>(r.lookups) : 0;
  return r;
}

template <typename Lookup>
BenchResult TimeLookups(std::span<const std::size_t> indices, Lookup&& lookup) {
  BenchResult r;
  r.lookups = indices.size();
  std::size_t sink = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i : indices) {
    std::size_t touched = 0;
    sink += lookup(i, &touched).size();
    r.bytes_touched += touched;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // Keeps the decode from being optimized away.
  if (sink == static_cast<std::size_t>(-1)) r.bytes_touched = 0;
  return Finish(r);
}

}  // namespace

std::string BuildContainer(std::span<const std::string> records, const PatternDictionary& dict,
                           const ContainerOptions& options, CodecStats* stats) {
  Codec codec(dict);
  std::string payload;
  std::vector<std::uint64_t> offsets;
  offsets.reserve(records.size());
  for (const auto& r : records) {
    offsets.push_back(payload.size());
    codec.Compress(r, payload, stats);
  }
  const std::size_t width = options.narrow_offsets ? 4 : 8;
  if (options.narrow_offsets && payload.size() > 0xffffffffu) {
    throw Error(ErrorCode::kInvalidArgument, "payload too large for 32-bit offsets");
  }

  std::string out(kContainerMagic, sizeof(kContainerMagic));
  out.push_back(static_cast<char>(kContainerVersion | (options.narrow_offsets ? kNarrowOffsetsFlag : 0)));
  const std::string dict_bytes = WriteDict(dict);
  PutVarUInt(out, dict_bytes.size());
  out += dict_bytes;
  PutVarUInt(out, records.size());
  out.reserve(out.size() + offsets.size() * width + payload.size() + kChecksumBytes);
  for (std::uint64_t off : offsets) PutBigEndian(out, off, width);
  out += payload;
  PutBigEndian(out, Crc32(out), kChecksumBytes);
  return out;
}

ContainerReader::ContainerReader(std::string_view data, bool verify) : data_(data) {
  if (data.size() < sizeof(kContainerMagic) ||
      data.substr(0, 4) != std::string_view(kContainerMagic, 4)) {
    throw Error(ErrorCode::kBadMagic, "not a container file");
  }
  if (data.size() < sizeof(kContainerMagic) + kChecksumBytes) {
    throw Error(ErrorCode::kChecksumMismatch, "container too short");
  }
  const std::string_view body = data.substr(0, data.size() - kChecksumBytes);
  if (verify) {
    ByteReader tail(data.substr(body.size()));
    if (tail.ReadBigEndian(kChecksumBytes) != Crc32(body)) {
      throw Error(ErrorCode::kChecksumMismatch, "container checksum mismatch");
    }
  }

  ByteReader in(body);
  in.ReadBytes(sizeof(kContainerMagic));
  try {
    const std::uint8_t version = in.ReadByte();
    if ((version & ~kNarrowOffsetsFlag) != kContainerVersion) {
      throw Error(ErrorCode::kUnsupportedVersion, "unsupported container version");
    }
    offset_width_ = (version & kNarrowOffsetsFlag) ? 4 : 8;
    const std::uint64_t dict_len = ReadCanonicalVarUInt(in);
    if (dict_len > in.remaining()) throw Error(ErrorCode::kMalformedToken, "dictionary overruns container");
    dict_ = std::make_unique<PatternDictionary>(ReadDict(in.ReadBytes(static_cast<std::size_t>(dict_len))));
    const std::uint64_t count = ReadCanonicalVarUInt(in);
    if (count > in.remaining() / offset_width_) {
      throw Error(ErrorCode::kMalformedToken, "offset index overruns container");
    }
    count_ = static_cast<std::size_t>(count);
    index_pos_ = in.position();
    payload_pos_ = index_pos_ + count_ * offset_width_;
    payload_size_ = body.size() - payload_pos_;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTruncated || e.code() == ErrorCode::kOverflow) {
      throw Error(ErrorCode::kMalformedToken, e.what());
    }
    throw;
  }

  if (verify) {
    // Every record takes at least one byte, so offsets strictly increase.
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      const std::uint64_t off = OffsetAt(i);
      if ((i == 0 && off != 0) || (i > 0 && off <= prev) || off >= payload_size_) {
        throw Error(ErrorCode::kMalformedToken, "offset index is not increasing");
      }
      prev = off;
    }
    if (count_ == 0 && payload_size_ != 0) throw Error(ErrorCode::kMalformedToken, "payload without records");
  }
  codec_ = std::make_unique<Codec>(*dict_);
}

std::uint64_t ContainerReader::OffsetAt(std::size_t i) const {
  ByteReader in(data_.substr(index_pos_ + i * offset_width_, offset_width_));
  return in.ReadBigEndian(offset_width_);
}

std::string ContainerReader::Lookup(std::size_t i, std::size_t* bytes_touched) const {
  if (i >= count_) throw Error(ErrorCode::kIndexOutOfRange, "record index out of range");
  const std::uint64_t begin = OffsetAt(i);
  const bool last = i + 1 == count_;
  const std::uint64_t end = last ? payload_size_ : OffsetAt(i + 1);
  if (begin >= end || end > payload_size_) {
    throw Error(ErrorCode::kMalformedPayload, "corrupt offset index");
  }
  const std::size_t len = static_cast<std::size_t>(end - begin);
  if (bytes_touched) *bytes_touched = (last ? 1 : 2) * offset_width_ + len;
  return codec_->Decompress(data_.substr(payload_pos_ + static_cast<std::size_t>(begin), len));
}

BlockBaseline::BlockBaseline(std::span<const std::string> records, const PatternDictionary& dict,
                             std::size_t block_size)
    : codec_(dict), count_(records.size()), block_size_(std::max<std::size_t>(block_size, 1)) {
  for (std::size_t b = 0; b < count_; b += block_size_) {
    std::string block;
    const std::size_t end = std::min(count_, b + block_size_);
    for (std::size_t i = b; i < end; ++i) codec_.Compress(records[i], block);
    blocks_.push_back(std::move(block));
  }
}

std::string BlockBaseline::Lookup(std::size_t i, std::size_t* bytes_touched) const {
  if (i >= count_) throw Error(ErrorCode::kIndexOutOfRange, "record index out of range");
  const std::string& block = blocks_[i / block_size_];
  ByteReader in(block);
  std::string wanted;
  // The whole block is decoded, as a block compressor would have to.
  for (std::size_t j = 0; !in.at_end(); ++j) {
    std::string r = codec_.Decompress(in);
    if (j == i % block_size_) wanted = std::move(r);
  }
  if (bytes_touched) *bytes_touched = block.size();
  return wanted;
}

std::vector<std::size_t> SampleIndices(std::size_t n, double fraction, std::uint64_t seed) {
  if (n == 0) return {};
  fraction = std::clamp(fraction, 0.0, 1.0);
  const std::size_t want =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))), 1, n);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `want` slots end up a uniform sample.
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(want);
  return all;
}

BenchResult BenchRandomAccess(const ContainerReader& reader, double fraction, std::uint64_t seed) {
  const auto indices = SampleIndices(reader.size(), fraction, seed);
  return TimeLookups(indices, [&](std::size_t i, std::size_t* t) { return reader.Lookup(i, t); });
}

BenchResult BenchBlockBaseline(const BlockBaseline& baseline, double fraction, std::uint64_t seed) {
  const auto indices = SampleIndices(baseline.size(), fraction, seed);
  return TimeLookups(indices, [&](std::size_t i, std::size_t* t) { return baseline.Lookup(i, t); });
}

}  // namespace pbc
