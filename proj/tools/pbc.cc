// Copyright 2026 The PBC Authors
// Licensed under the Apache License, Version 2.0

// pbc: train pattern dictionaries and compress record corpora with them.
//
// Exit codes: 0 success, 1 usage error, 2 data or I/O error.

#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbc/codec.h"
#include "pbc/corpus.h"
#include "pbc/dictio.h"
#include "pbc/pipeline.h"
#include "pbc/store.h"
#include "pbc/synth.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pbc::Error(pbc::ErrorCode::kIo, "cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw pbc::Error(pbc::ErrorCode::kIo, "read failed: " + path);
  return ss.str();
}

// Write to a sibling temp file, then rename over the target.
void WriteFileAtomic(const std::string& path, std::string_view data) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw pbc::Error(pbc::ErrorCode::kIo, "cannot create " + tmp + ": " + std::strerror(errno));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw pbc::Error(pbc::ErrorCode::kIo, "write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw pbc::Error(pbc::ErrorCode::kIo, "cannot rename onto " + path + ": " + std::strerror(errno));
  }
}

pbc::Framing FramingArg(const std::string& name) {
  auto f = pbc::ParseFraming(name);
  if (!f) throw UsageError("unknown framing '" + name + "' (lines|framed)");
  return *f;
}

pbc::MergeCriterion CriterionArg(const std::string& name) {
  auto c = pbc::ParseCriterion(name);
  if (!c) throw UsageError("unknown criterion '" + name + "' (el|entropy|edit)");
  return *c;
}

std::size_t WorkerThreads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PBC_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

json StatsJson(const pbc::CodecStats& s) {
  json hist = json::object();
  for (std::size_t id = 1; id < s.hits.size(); ++id) {
    if (s.hits[id] > 0) hist[std::to_string(id)] = s.hits[id];
  }
  return {
      {"records", s.records_total},
      {"outliers", s.records_outlier},
      {"post_coded", s.records_post_coded},
      {"bytes_in", s.bytes_in},
      {"bytes_out", s.bytes_out},
      {"ratio", s.ratio()},
      {"outlier_rate", s.records_total ? pbc::OutlierRate(s) : 0.0},
      {"hits", hist},
  };
}

void Emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) {
    std::cout << j.dump(2, ' ', false, json::error_handler_t::replace) << "\n";
  } else {
    std::cout << text;
  }
}

struct Options {
  bool json = false;

  // gen
  std::string kind = "templated";
  std::size_t count = 10000;

  // shared
  std::string input;
  std::string output;
  std::string dict;
  std::string container;
  std::string framing = "lines";
  std::uint64_t seed = 0;

  // train / ablate
  std::uint64_t sample_bytes = pbc::kDefaultSampleBytes;
  std::size_t max_sample_records = 4096;
  std::size_t patterns = 256;
  std::string criterion = "el";
  std::vector<std::string> criteria = {"el", "entropy", "edit"};
  std::string postcoder = "none";
  bool no_pruning = false;

  // pack / lookup / bench / stats
  bool narrow_offsets = false;
  std::size_t index = 0;
  double fraction = 0.01;
  std::vector<std::size_t> block_sizes;
  double threshold = pbc::kDefaultRetrainThreshold;
};

pbc::TrainOptions TrainOptionsFrom(const Options& o, pbc::MergeCriterion criterion) {
  pbc::TrainOptions t;
  t.sample_bytes = o.sample_bytes;
  t.seed = o.seed;
  t.extract.k = o.patterns;
  t.extract.criterion = criterion;
  t.extract.pruning = !o.no_pruning;
  t.extract.max_distinct_records = o.max_sample_records;
  if (o.postcoder == "huffman") {
    t.huffman = true;
  } else if (o.postcoder != "none") {
    throw UsageError("unknown post-coder '" + o.postcoder + "' (none|huffman)");
  }
  return t;
}

int CmdGen(const Options& o) {
  auto kind = pbc::ParseSynthKind(o.kind);
  if (!kind) throw UsageError("unknown corpus kind '" + o.kind + "'");
  pbc::Corpus c;
  c.framing = FramingArg(o.framing);
  c.records = pbc::GenerateCorpus(*kind, o.count, o.seed);
  const std::string data = pbc::SerializeCorpus(c);
  WriteFileAtomic(o.output, data);
  Emit(o.json, {{"kind", o.kind}, {"records", c.records.size()}, {"bytes", data.size()}},
       "wrote " + std::to_string(c.records.size()) + " " + o.kind + " records (" +
           std::to_string(data.size()) + " bytes) to " + o.output + "\n");
  return 0;
}

int CmdTrain(const Options& o) {
  const pbc::TrainOptions options = TrainOptionsFrom(o, CriterionArg(o.criterion));
  const pbc::Corpus corpus = pbc::ParseCorpus(ReadFile(o.input), FramingArg(o.framing));
  const pbc::TrainReport report = pbc::TrainDictionary(corpus.records, options);
  const std::string bytes = pbc::WriteDict(report.dictionary);
  WriteFileAtomic(o.output, bytes);

  const bool singletons = report.distinct_records == o.patterns;
  if (singletons) {
    std::cerr << "warning: k equals the distinct sample size; every pattern is a single record\n";
  }
  json j = {
      {"sample_records", report.sample_records},
      {"sample_bytes", report.sample_bytes},
      {"distinct_records", report.distinct_records},
      {"k", o.patterns},
      {"criterion", o.criterion},
      {"patterns", report.dictionary.size()},
      {"dropped_clusters", report.dropped_clusters},
      {"postcoder", o.postcoder},
      {"dictionary_bytes", bytes.size()},
      {"seconds", report.seconds},
      {"singleton_warning", singletons},
  };
  std::ostringstream text;
  text << "sample: " << report.sample_records << " records, " << report.sample_bytes << " bytes ("
       << report.distinct_records << " distinct)\n"
       << "k: " << o.patterns << ", criterion: " << o.criterion << ", patterns: "
       << report.dictionary.size() << "\n"
       << "dictionary: " << bytes.size() << " bytes -> " << o.output << "\n"
       << "elapsed: " << report.seconds << " s\n";
  Emit(o.json, j, text.str());
  return 0;
}

int CmdCompress(const Options& o) {
  const pbc::PatternDictionary dict = pbc::ReadDict(ReadFile(o.dict));
  const std::string raw = ReadFile(o.input);
  const pbc::Corpus corpus = pbc::ParseCorpus(raw, FramingArg(o.framing));
  pbc::Codec codec(dict);
  pbc::CodecStats stats;
  const std::string out = pbc::CompressCorpus(corpus, codec, &stats, WorkerThreads());
  WriteFileAtomic(o.output, out);
  json j = StatsJson(stats);
  j["file_bytes_in"] = raw.size();
  j["file_bytes_out"] = out.size();
  std::ostringstream text;
  text << stats.records_total << " records, " << stats.records_outlier << " outliers\n"
       << "record bytes: " << stats.bytes_in << " -> " << stats.bytes_out << " (ratio "
       << stats.ratio() << ")\n"
       << "file bytes: " << raw.size() << " -> " << out.size() << "\n";
  Emit(o.json, j, text.str());
  return 0;
}

int CmdDecompress(const Options& o) {
  const pbc::PatternDictionary dict = pbc::ReadDict(ReadFile(o.dict));
  pbc::Codec codec(dict);
  const pbc::Corpus corpus = pbc::DecompressCorpus(ReadFile(o.input), codec);
  const std::string data = pbc::SerializeCorpus(corpus);
  WriteFileAtomic(o.output, data);
  Emit(o.json, {{"records", corpus.records.size()}, {"bytes", data.size()}},
       std::to_string(corpus.records.size()) + " records, " + std::to_string(data.size()) +
           " bytes -> " + o.output + "\n");
  return 0;
}

int CmdPack(const Options& o) {
  const pbc::PatternDictionary dict = pbc::ReadDict(ReadFile(o.dict));
  const pbc::Corpus corpus = pbc::ParseCorpus(ReadFile(o.input), FramingArg(o.framing));
  pbc::CodecStats stats;
  pbc::ContainerOptions options;
  options.narrow_offsets = o.narrow_offsets;
  const std::string bytes = pbc::BuildContainer(corpus.records, dict, options, &stats);
  WriteFileAtomic(o.output, bytes);
  json j = StatsJson(stats);
  j["container_bytes"] = bytes.size();
  Emit(o.json, j,
       std::to_string(stats.records_total) + " records packed, " + std::to_string(bytes.size()) +
           " bytes -> " + o.output + "\n");
  return 0;
}

int CmdLookup(const Options& o) {
  const std::string data = ReadFile(o.container);
  const pbc::ContainerReader reader(data);
  std::size_t touched = 0;
  const std::string record = reader.Lookup(o.index, &touched);
  if (o.json) {
    Emit(true, {{"index", o.index}, {"record", record}, {"bytes_touched", touched}}, "");
  } else {
    std::cout.write(record.data(), static_cast<std::streamsize>(record.size()));
    std::cout << "\n";
  }
  return 0;
}

int CmdBench(const Options& o) {
  const std::string data = ReadFile(o.container);
  const pbc::ContainerReader reader(data);
  const pbc::BenchResult direct = pbc::BenchRandomAccess(reader, o.fraction, o.seed);
  json j = {{"records", reader.size()},
            {"fraction", o.fraction},
            {"seed", o.seed},
            {"container",
             {{"lookups", direct.lookups},
              {"seconds", direct.seconds},
              {"lookups_per_second", direct.lookups_per_second},
              {"bytes_per_lookup", direct.bytes_per_lookup}}}};
  std::ostringstream text;
  text << "container: " << direct.lookups << " lookups, " << direct.lookups_per_second
       << " lookups/s, " << direct.bytes_per_lookup << " bytes/lookup\n";

  if (!o.block_sizes.empty()) {
    std::vector<std::string> records;
    records.reserve(reader.size());
    for (std::size_t i = 0; i < reader.size(); ++i) records.push_back(reader.Lookup(i));
    json arms = json::array();
    for (std::size_t b : o.block_sizes) {
      const pbc::BlockBaseline baseline(records, reader.dictionary(), b);
      const pbc::BenchResult r = pbc::BenchBlockBaseline(baseline, o.fraction, o.seed);
      arms.push_back({{"block_size", b},
                      {"lookups", r.lookups},
                      {"seconds", r.seconds},
                      {"lookups_per_second", r.lookups_per_second},
                      {"bytes_per_lookup", r.bytes_per_lookup}});
      text << "block " << b << ": " << r.lookups_per_second << " lookups/s, " << r.bytes_per_lookup
           << " bytes/lookup\n";
    }
    j["block_baseline"] = arms;
  }
  Emit(o.json, j, text.str());
  return 0;
}

int CmdStats(const Options& o) {
  const pbc::PatternDictionary dict = pbc::ReadDict(ReadFile(o.dict));
  const std::string raw = ReadFile(o.input);
  const pbc::Corpus corpus = pbc::ParseCorpus(raw, FramingArg(o.framing));
  const pbc::RetrainScan scan = pbc::ScanForRetrain(dict, corpus.records, o.threshold);
  const bool retrain = scan.stats.records_total > 0 && pbc::ShouldRetrain(scan.stats, o.threshold);

  json j = StatsJson(scan.stats);
  j["threshold"] = o.threshold;
  j["should_retrain"] = retrain;
  j["first_trigger"] = scan.first_trigger ? json(*scan.first_trigger) : json(nullptr);
  std::ostringstream text;
  text << "records: " << scan.stats.records_total << "\n"
       << "ratio: " << scan.stats.ratio() << " (" << scan.stats.bytes_out << " / "
       << scan.stats.bytes_in << " bytes)\n"
       << "outlier rate: " << (scan.stats.records_total ? pbc::OutlierRate(scan.stats) : 0.0)
       << " (threshold " << o.threshold << ")\n"
       << "should retrain: " << (retrain ? "yes" : "no");
  if (scan.first_trigger) text << " (first at record " << *scan.first_trigger << ")";
  text << "\n";
  for (std::size_t id = 1; id < scan.stats.hits.size(); ++id) {
    if (scan.stats.hits[id] == 0) continue;
    text << "  pattern " << id << ": " << scan.stats.hits[id] << "  " << dict.at(static_cast<std::uint32_t>(id)).ToString()
         << "\n";
  }
  Emit(o.json, j, text.str());
  return 0;
}

int CmdAblate(const Options& o) {
  const pbc::Corpus corpus = pbc::ParseCorpus(ReadFile(o.input), FramingArg(o.framing));
  json rows = json::array();
  std::ostringstream text;
  text << "criterion  ratio     outliers  seconds\n";
  for (const std::string& name : o.criteria) {
    const pbc::TrainOptions options = TrainOptionsFrom(o, CriterionArg(name));
    const pbc::TrainReport report = pbc::TrainDictionary(corpus.records, options);
    const pbc::CodecStats stats = pbc::MeasureCorpus(report.dictionary, corpus.records);
    rows.push_back({{"criterion", name},
                    {"ratio", stats.ratio()},
                    {"outliers", stats.records_outlier},
                    {"patterns", report.dictionary.size()},
                    {"train_seconds", report.seconds}});
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %-9.4f %-9llu %.2f\n", name.c_str(), stats.ratio(),
                  static_cast<unsigned long long>(stats.records_outlier), report.seconds);
    text << line;
  }
  Emit(o.json, {{"k", o.patterns}, {"rows", rows}}, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pattern-based record compression"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  auto* gen = app.add_subcommand("gen", "write a seeded synthetic corpus");
  gen->add_option("--kind", o.kind, "trade|templated|mixed|fixed|drift")->capture_default_str();
  gen->add_option("--count", o.count)->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--framing", o.framing)->capture_default_str();
  gen->add_option("--out", o.output)->required();

  auto* train = app.add_subcommand("train", "extract a pattern dictionary from a corpus sample");
  train->add_option("--input", o.input)->required();
  train->add_option("--framing", o.framing)->capture_default_str();
  train->add_option("--sample-bytes", o.sample_bytes)->capture_default_str();
  train->add_option("--max-sample-records", o.max_sample_records)->capture_default_str();
  train->add_option("--patterns", o.patterns)->capture_default_str();
  train->add_option("--criterion", o.criterion, "el|entropy|edit")->capture_default_str();
  train->add_option("--postcoder", o.postcoder, "none|huffman")->capture_default_str();
  train->add_option("--seed", o.seed)->capture_default_str();
  train->add_flag("--no-pruning", o.no_pruning, "evaluate every pair exactly");
  train->add_option("--out", o.output)->required();

  auto* compress = app.add_subcommand("compress", "compress a corpus into a record stream");
  compress->add_option("--dict", o.dict)->required();
  compress->add_option("--input", o.input)->required();
  compress->add_option("--output", o.output)->required();
  compress->add_option("--framing", o.framing)->capture_default_str();

  auto* decompress = app.add_subcommand("decompress", "restore a corpus from a record stream");
  decompress->add_option("--dict", o.dict)->required();
  decompress->add_option("--input", o.input)->required();
  decompress->add_option("--output", o.output)->required();

  auto* pack = app.add_subcommand("pack", "build a random-access container");
  pack->add_option("--dict", o.dict)->required();
  pack->add_option("--input", o.input)->required();
  pack->add_option("--out", o.output)->required();
  pack->add_option("--framing", o.framing)->capture_default_str();
  pack->add_flag("--narrow-offsets", o.narrow_offsets, "32-bit offset index");

  auto* lookup = app.add_subcommand("lookup", "print one record of a container");
  lookup->add_option("--container", o.container)->required();
  lookup->add_option("--index", o.index)->required();

  auto* bench = app.add_subcommand("bench", "time random lookups against block decoding");
  bench->add_option("--container", o.container)->required();
  bench->add_option("--fraction", o.fraction)->capture_default_str();
  bench->add_option("--seed", o.seed)->capture_default_str();
  bench->add_option("--block-baseline", o.block_sizes, "block sizes for the comparison arm");

  auto* stats = app.add_subcommand("stats", "compression ratio, outliers and retrain signal");
  stats->add_option("--dict", o.dict)->required();
  stats->add_option("--input", o.input)->required();
  stats->add_option("--framing", o.framing)->capture_default_str();
  stats->add_option("--threshold", o.threshold)->capture_default_str();

  auto* ablate = app.add_subcommand("ablate", "compare merge criteria on one corpus");
  ablate->add_option("--input", o.input)->required();
  ablate->add_option("--framing", o.framing)->capture_default_str();
  ablate->add_option("--patterns", o.patterns)->capture_default_str();
  ablate->add_option("--criteria", o.criteria)->delimiter(',')->capture_default_str();
  ablate->add_option("--sample-bytes", o.sample_bytes)->capture_default_str();
  ablate->add_option("--max-sample-records", o.max_sample_records)->capture_default_str();
  ablate->add_option("--seed", o.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return CmdGen(o);
    if (*train) return CmdTrain(o);
    if (*compress) return CmdCompress(o);
    if (*decompress) return CmdDecompress(o);
    if (*pack) return CmdPack(o);
    if (*lookup) return CmdLookup(o);
    if (*bench) return CmdBench(o);
    if (*stats) return CmdStats(o);
    if (*ablate) return CmdAblate(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pbc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
