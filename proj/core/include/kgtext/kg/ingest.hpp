#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/kg/store.hpp"

namespace kgtext {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DumpFormat { kNTriples, kTsv };

struct IngestConfig {
  StoreSchema schema;
  DumpFormat format = DumpFormat::kNTriples;
};

struct IngestStats {
  std::size_t lines = 0;
  std::size_t triples = 0;  ///< well-formed triples accepted (before dedup)
  std::size_t skipped_blank_node = 0;
  std::size_t skipped_malformed = 0;
  std::vector<std::string> warnings;

  std::size_t skipped() const { return skipped_blank_node + skipped_malformed; }
};

struct IngestResult {
  TripleStore store;
  IngestStats stats;
};

/// Outcome of parsing one N-Triples line.
enum class LineStatus { kTriple, kEmpty, kBlankNode, kMalformed };

struct ParsedLine {
  LineStatus status = LineStatus::kEmpty;
  std::optional<Triple> triple;
  std::string error;
};

/// Parses a single N-Triples statement. Comments and blank lines yield
/// kEmpty. Literal language tags and datatypes are dropped.
ParsedLine parse_ntriples_line(std::string_view line);

/// Parses a TSV row: subject, predicate, object, object_kind (iri|literal).
ParsedLine parse_tsv_line(std::string_view line);

IngestResult ingest(std::istream& source, const IngestConfig& config);
IngestResult ingest_ntriples(std::istream& source, const IngestConfig& config);

/// Opens `path` and ingests it; throws IngestError if unreadable.
IngestResult ingest_file(const std::filesystem::path& path, const IngestConfig& config);

/// Writes the store as sorted N-Triples.
void write_ntriples(std::ostream& out, const TripleStore& store);

}  // namespace kgtext
