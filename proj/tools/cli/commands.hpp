#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace kgtext::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Flags shared by subcommands that load the serving inputs. Anything set
/// here overrides the config file.
struct InputFlags {
  std::string config;
  std::string store;
  std::string corpus;
  std::string index;
  std::string registry;
  std::string lexicon;
  std::string format;
};

struct IngestOptions {
  InputFlags in;
  std::string out;
};

struct BuildIndexOptions {
  InputFlags in;
  std::string out;
  double k1 = 1.2;
  double b = 0.75;
};

struct DatagenOptions {
  InputFlags in;
  std::string out;
  std::string setting = "both";
  std::optional<std::size_t> window;
  std::uint64_t seed = 20181029;
  unsigned threads = 1;
  std::size_t max_type_pairings = 20;
  std::size_t max_examples = 300;
  std::size_t min_examples = 30;
};

struct ServeOptions {
  InputFlags in;
  std::optional<std::string> bind;
  std::optional<int> port;
  std::optional<std::size_t> page_size;
};

struct QueryOptions {
  InputFlags in;
  std::string endpoint;
  std::string sparql;
  std::string pattern;
  bool json = false;
  bool tsv = false;
};

struct EvalOptions {
  std::string datasets;
  std::string extractor = "baseline";
  std::string report;
  bool json = false;
  unsigned threads = 1;
};

struct StatsOptions {
  InputFlags in;
};

int run_ingest(const IngestOptions& o);
int run_build_index(const BuildIndexOptions& o);
int run_datagen(const DatagenOptions& o);
int run_serve(const ServeOptions& o);
int run_query(const QueryOptions& o);
int run_eval(const EvalOptions& o);
int run_stats(const StatsOptions& o);

}  // namespace kgtext::cli
