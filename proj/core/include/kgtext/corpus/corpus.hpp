#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgtext {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain-text description of one entity. Offsets into `text` are UTF-8 byte
/// offsets.
struct Document {
  std::string iri;
  std::string title;
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Documents keyed by entity IRI, kept in IRI order.
class Corpus {
 public:
  Corpus() = default;
  /// Throws CorpusError on a duplicate IRI or an empty IRI.
  explicit Corpus(std::vector<Document> docs);

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  /// textual_description(e); nullptr when the entity has no document.
  const Document* find(std::string_view iri) const;

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> by_iri_;
};

/// One JSON object per line with string fields iri, title, text. Blank lines
/// are ignored; anything else malformed is an error naming the line.
Corpus load_corpus_jsonl(std::istream& in);
Corpus load_corpus_jsonl(const std::filesystem::path& path);
void write_corpus_jsonl(std::ostream& out, const Corpus& corpus);

}  // namespace kgtext
