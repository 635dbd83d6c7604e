#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kgtext/executor/executor.hpp"
#include "kgtext/kg/ingest.hpp"

namespace kgtext {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathsConfig {
  std::string store;     ///< N-Triples or TSV dump
  std::string corpus;    ///< JSONL documents
  std::string index;     ///< search index file; built from the corpus when absent
  std::string registry;  ///< extractor registry JSON; empty means baseline only
  std::string lexicon;   ///< IRI<TAB>label TSV; empty means labels from the store

  friend bool operator==(const PathsConfig&, const PathsConfig&) = default;
};

struct ServerConfig {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::size_t page_size = 100;

  friend bool operator==(const ServerConfig&, const ServerConfig&) = default;
};

/// Everything `serve` needs, as one JSON document:
///
///   {"paths": {"store": ..., "corpus": ..., "index": ..., "registry": ..., "lexicon": ...},
///    "executor": {"candidate_docs": 10, "max_answers": 10, "score_cutoff": 0.1,
///                 "parallel_documents": false},
///    "server": {"bind": "127.0.0.1", "port": 8080, "page_size": 100},
///    "ingest": {"format": "ntriples", "type_predicate": ..., "label_predicate": ...}}
///
/// Every section and key is optional; unknown keys are rejected.
struct AppConfig {
  PathsConfig paths;
  ExecutorConfig executor;
  ServerConfig server;
  IngestConfig ingest;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  /// Throws ConfigError naming the first referenced input that does not
  /// exist. The index may be missing (it is then built).
  void check_paths() const;
  /// Relative paths are taken relative to `base`.
  void resolve_paths(const std::filesystem::path& base);
};

bool operator==(const AppConfig& a, const AppConfig& b);

std::string to_json(const AppConfig& cfg);
/// Throws ConfigError.
AppConfig app_config_from_json(std::string_view text);
/// Reads, parses and resolves paths relative to the file's directory.
AppConfig load_app_config(const std::filesystem::path& path);

std::string_view to_string(DumpFormat f);
/// "ntriples" or "tsv"; throws ConfigError.
DumpFormat parse_dump_format(std::string_view s);

}  // namespace kgtext
