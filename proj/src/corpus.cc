// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

#include "pbc/corpus.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

namespace pbc {

namespace {

constexpr std::uint8_t kStreamFramed = 0x01;
constexpr std::uint8_t kStreamNoFinalNewline = 0x02;

}  // namespace

std::optional<Framing> ParseFraming(std::string_view name) {
  if (name == "lines") return Framing::kLines;
  if (name == "framed") return Framing::kFramed;
  return std::nullopt;
}

std::string_view FramingName(Framing framing) {
  return framing == Framing::kLines ? "lines" : "framed";
}

Corpus ParseCorpus(std::string_view data, Framing framing) {
  Corpus c;
  c.framing = framing;
  if (framing == Framing::kFramed) {
    ByteReader in(data);
    while (!in.at_end()) {
      const std::uint64_t len = in.ReadVarUInt();
      if (len > in.remaining()) throw Error(ErrorCode::kTruncated, "framed record cut short");
      c.records.emplace_back(in.ReadBytes(static_cast<std::size_t>(len)));
    }
    return c;
  }
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) {
      c.records.emplace_back(data.substr(pos));
      c.final_newline = false;
      break;
    }
    c.records.emplace_back(data.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return c;
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const std::string& r = corpus.records[i];
    if (corpus.framing == Framing::kFramed) {
      PutVarUInt(out, r.size());
      out += r;
      continue;
    }
    if (r.find('\n') != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "record contains a newline; use framed mode");
    }
    out += r;
    if (i + 1 < corpus.records.size() || corpus.final_newline) out.push_back('\n');
  }
  return out;
}

std::string CompressCorpus(const Corpus& corpus, const Codec& codec, CodecStats* stats,
                           std::size_t threads) {
  std::string out(kStreamMagic, sizeof(kStreamMagic));
  out.push_back(static_cast<char>(kStreamVersion));
  std::uint8_t flags = 0;
  if (corpus.framing == Framing::kFramed) flags |= kStreamFramed;
  if (corpus.framing == Framing::kLines && !corpus.final_newline) flags |= kStreamNoFinalNewline;
  out.push_back(static_cast<char>(flags));
  PutVarUInt(out, corpus.records.size());

  const std::size_t n = corpus.records.size();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n / 1024, 1));
  std::vector<std::string> parts(threads);
  std::vector<CodecStats> part_stats(threads);
  auto work = [&](std::size_t t) {
    const std::size_t begin = n * t / threads;
    const std::size_t end = n * (t + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) codec.Compress(corpus.records[i], parts[t], &part_stats[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (std::size_t t = 0; t < threads; ++t) {
    out += parts[t];
    if (stats) stats->Merge(part_stats[t]);
  }
  return out;
}

Corpus DecompressCorpus(std::string_view stream, const Codec& codec) {
  if (stream.size() < sizeof(kStreamMagic) ||
      stream.substr(0, 4) != std::string_view(kStreamMagic, 4)) {
    throw Error(ErrorCode::kBadMagic, "not a compressed stream");
  }
  ByteReader in(stream);
  in.ReadBytes(sizeof(kStreamMagic));
  if (in.ReadByte() != kStreamVersion) throw Error(ErrorCode::kUnsupportedVersion, "unsupported stream version");
  const std::uint8_t flags = in.ReadByte();
  if ((flags & ~(kStreamFramed | kStreamNoFinalNewline)) != 0 ||
      ((flags & kStreamFramed) && (flags & kStreamNoFinalNewline))) {
    throw Error(ErrorCode::kMalformedPayload, "unknown stream flags");
  }
  Corpus c;
  c.framing = (flags & kStreamFramed) ? Framing::kFramed : Framing::kLines;
  c.final_newline = (flags & kStreamNoFinalNewline) == 0;
  const std::uint64_t count = in.ReadVarUInt();
  if (count > in.remaining()) throw Error(ErrorCode::kTruncated, "record count exceeds stream");
  c.records.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) c.records.push_back(codec.Decompress(in));
  if (!in.at_end()) throw Error(ErrorCode::kMalformedPayload, "trailing bytes after last record");
  return c;
}

std::vector<std::string> SampleRecords(std::span<const std::string> records,
                                       std::uint64_t byte_budget, std::uint64_t seed) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  std::vector<std::size_t> kept;
  std::uint64_t used = 0;
  for (std::size_t idx : order) {
    if (used >= byte_budget) break;
    const std::uint64_t len = records[idx].size();
    if (len > byte_budget - used) continue;
    used += len;
    kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> out;
  out.reserve(kept.size());
  for (std::size_t idx : kept) out.push_back(records[idx]);
  return out;
}

}  // namespace pbc
