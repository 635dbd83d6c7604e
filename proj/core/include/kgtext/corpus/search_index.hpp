#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgtext/corpus/corpus.hpp"

namespace kgtext {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

struct SearchHit {
  std::string iri;
  double score = 0.0;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Lowercase, split on non-alphanumeric bytes (bytes >= 0x80 are kept as
/// word characters so UTF-8 words stay whole).
std::vector<std::string> tokenize(std::string_view text);

/// Okapi BM25 inverted index over a corpus.
///
/// idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)), which is always positive, so
/// a document scores > 0 exactly when it contains a query token. Repeated
/// query tokens count once.
class SearchIndex {
 public:
  struct Posting {
    std::uint32_t doc = 0;
    std::uint32_t tf = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
  };

  SearchIndex() = default;
  explicit SearchIndex(const Corpus& corpus, Bm25Params params = {});

  /// Top-k documents with positive score; ties by IRI ascending.
  std::vector<SearchHit> search(std::string_view query, std::size_t k) const;

  std::size_t document_count() const { return doc_iris_.size(); }
  double average_length() const { return avg_length_; }
  const Bm25Params& params() const { return params_; }
  std::size_t document_frequency(std::string_view token) const;

  /// Binary on-disk form; see docs/index_format.md.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static SearchIndex load(std::istream& in);
  static SearchIndex load(const std::filesystem::path& path);

  friend bool operator==(const SearchIndex&, const SearchIndex&) = default;

 private:
  void finish();

  Bm25Params params_;
  std::vector<std::string> doc_iris_;
  std::vector<std::uint32_t> doc_lengths_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  double avg_length_ = 0.0;
};

inline std::vector<SearchHit> search(const SearchIndex& index, std::string_view query,
                                     std::size_t k) {
  return index.search(query, k);
}

}  // namespace kgtext
