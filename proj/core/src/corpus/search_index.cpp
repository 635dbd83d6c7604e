#include "kgtext/corpus/search_index.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <set>

#include "kgtext/util/text.hpp"

namespace kgtext {

namespace {

constexpr std::array<char, 8> kMagic = {'K', 'G', 'T', 'X', 'I', 'D', 'X', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "index serialization assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_string(std::ostream& out, std::string_view s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw CorpusError("index file truncated");
  return v;
}

std::string get_string(std::istream& in) {
  const auto n = get<std::uint32_t>(in);
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), n)) throw CorpusError("index file truncated");
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) { return text::word_tokens(text); }

SearchIndex::SearchIndex(const Corpus& corpus, Bm25Params params) : params_(params) {
  doc_iris_.reserve(corpus.size());
  doc_lengths_.reserve(corpus.size());
  for (const Document& d : corpus.documents()) {
    const auto doc = static_cast<std::uint32_t>(doc_iris_.size());
    doc_iris_.push_back(d.iri);
    // Title is indexed with the body.
    std::vector<std::string> tokens = tokenize(d.title);
    for (auto& t : tokenize(d.text)) tokens.push_back(std::move(t));
    doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    std::map<std::string, std::uint32_t> tf;
    for (auto& t : tokens) ++tf[std::move(t)];
    for (auto& [token, count] : tf) postings_[token].push_back({doc, count});
  }
  finish();
}

void SearchIndex::finish() {
  double total = 0;
  for (auto len : doc_lengths_) total += len;
  avg_length_ = doc_lengths_.empty() ? 0.0 : total / static_cast<double>(doc_lengths_.size());
}

std::size_t SearchIndex::document_frequency(std::string_view token) const {
  auto it = postings_.find(std::string(token));
  return it == postings_.end() ? 0 : it->second.size();
}

std::vector<SearchHit> SearchIndex::search(std::string_view query, std::size_t k) const {
  if (k == 0 || doc_iris_.empty()) return {};
  const auto tokens = tokenize(query);
  const std::set<std::string> distinct(tokens.begin(), tokens.end());
  const double n = static_cast<double>(doc_iris_.size());
  const double avg = avg_length_ > 0 ? avg_length_ : 1.0;

  std::unordered_map<std::uint32_t, double> scores;
  for (const auto& token : distinct) {
    auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const double df = static_cast<double>(it->second.size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (const Posting& p : it->second) {
      const double tf = p.tf;
      const double norm = params_.k1 * (1.0 - params_.b + params_.b * doc_lengths_[p.doc] / avg);
      scores[p.doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }

  std::vector<SearchHit> hits;
  hits.reserve(scores.size());
  for (const auto& [doc, score] : scores) {
    if (score > 0) hits.push_back({doc_iris_[doc], score});
  }
  auto better = [](const SearchHit& a, const SearchHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.iri < b.iri;
  };
  if (hits.size() > k) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(),
                      better);
    hits.resize(k);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }
  return hits;
}

void SearchIndex::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kFormatVersion);
  put<double>(out, params_.k1);
  put<double>(out, params_.b);
  put<std::uint64_t>(out, doc_iris_.size());
  for (std::size_t i = 0; i < doc_iris_.size(); ++i) {
    put_string(out, doc_iris_[i]);
    put<std::uint32_t>(out, doc_lengths_[i]);
  }
  // Terms in sorted order so equal indexes produce identical files.
  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [t, _] : postings_) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return *a < *b; });
  put<std::uint64_t>(out, terms.size());
  for (const std::string* t : terms) {
    const auto& list = postings_.at(*t);
    put_string(out, *t);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(list.size()));
    for (const Posting& p : list) {
      put<std::uint32_t>(out, p.doc);
      put<std::uint32_t>(out, p.tf);
    }
  }
  if (!out) throw CorpusError("failed writing index");
}

void SearchIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError("cannot write index " + path.string());
  save(out);
}

SearchIndex SearchIndex::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw CorpusError("not a kgtext index file");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw CorpusError("unsupported index format version " + std::to_string(version));
  }
  SearchIndex idx;
  idx.params_.k1 = get<double>(in);
  idx.params_.b = get<double>(in);
  const auto docs = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < docs; ++i) {
    idx.doc_iris_.push_back(get_string(in));
    idx.doc_lengths_.push_back(get<std::uint32_t>(in));
  }
  const auto terms = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < terms; ++i) {
    std::string term = get_string(in);
    const auto count = get<std::uint32_t>(in);
    std::vector<Posting> list(count);
    for (auto& p : list) {
      p.doc = get<std::uint32_t>(in);
      p.tf = get<std::uint32_t>(in);
      if (p.doc >= docs) throw CorpusError("index posting refers to unknown document");
    }
    idx.postings_.emplace(std::move(term), std::move(list));
  }
  idx.finish();
  return idx;
}

SearchIndex SearchIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open index " + path.string());
  return load(in);
}

}  // namespace kgtext
