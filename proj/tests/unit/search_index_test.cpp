#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "kgtext/corpus/search_index.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace kgtext {
namespace {

Corpus five_docs() {
  return Corpus({{"http://x/1", "", "red green blue"},
                 {"http://x/2", "", "red red yellow"},
                 {"http://x/3", "", "green zebra"},
                 {"http://x/4", "", "blue blue"},
                 {"http://x/5", "", "black white"}});
}

TEST(SearchIndex, UniqueTokenRanksFirst) {
  const SearchIndex idx(five_docs());
  const auto hits = search(idx, "zebra", 5);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].iri, "http://x/3");
}

TEST(SearchIndex, ZeroK) {
  const SearchIndex idx(five_docs());
  EXPECT_TRUE(search(idx, "red", 0).empty());
}

TEST(SearchIndex, TermFrequencyOrderAndOracle) {
  const Corpus c({{"http://x/a", "", "token filler filler"}, {"http://x/b", "", "token token token"}});
  const SearchIndex idx(c);
  const auto hits = search(idx, "token", 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].iri, "http://x/b");
  EXPECT_NEAR(hits[0].score, oracle::bm25(c, "token", "http://x/b"), 1e-9);
  EXPECT_NEAR(hits[1].score, oracle::bm25(c, "token", "http://x/a"), 1e-9);
}

TEST(SearchIndex, TiesByIri) {
  const Corpus c({{"http://x/b", "", "same words"}, {"http://x/a", "", "same words"}, {"http://x/c", "", "other"}});
  const auto hits = SearchIndex(c).search("same", 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].iri, "http://x/a");
  EXPECT_EQ(hits[0].score, hits[1].score);
}

TEST(SearchIndex, TitleIndexedAndRepeatsCountOnce) {
  const Corpus c({{"http://x/a", "Amsterdam", "a city"}, {"http://x/b", "", "a city"}});
  const SearchIndex idx(c);
  const auto hits = idx.search("amsterdam", 10);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(idx.search("amsterdam amsterdam", 10), hits);
  EXPECT_EQ(tokenize("Amsterdam's Café"), (std::vector<std::string>{"amsterdam", "s", "caf\xC3\xA9"}));
}

TEST(SearchIndexProperty, MatchesOracleOnRandomCorpora) {
  fixture::Rng rng(31);
  static const char* kVocab[] = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"};
  for (int round = 0; round < 30; ++round) {
    std::vector<Document> docs;
    const std::size_t n = fixture::pick(rng, 1, 25);
    for (std::size_t i = 0; i < n; ++i) {
      std::string t;
      const std::size_t len = fixture::pick(rng, 0, 30);
      for (std::size_t j = 0; j < len; ++j) t += std::string(kVocab[fixture::pick(rng, 0, 7)]) + " ";
      docs.push_back({"http://x/d" + std::to_string(i), fixture::coin(rng, 0.3) ? "Alpha" : "", t});
    }
    const Corpus c(docs);
    const SearchIndex idx(c);
    const std::string q = std::string(kVocab[fixture::pick(rng, 0, 7)]) + " " + kVocab[fixture::pick(rng, 0, 7)];
    const auto hits = idx.search(q, n);
    for (std::size_t i = 0; i < hits.size(); ++i) {
      EXPECT_GT(hits[i].score, 0.0);
      EXPECT_TRUE(std::isfinite(hits[i].score));
      EXPECT_NEAR(hits[i].score, oracle::bm25(c, q, hits[i].iri), 1e-9);
      if (i) EXPECT_TRUE(hits[i - 1].score > hits[i].score ||
                         (hits[i - 1].score == hits[i].score && hits[i - 1].iri < hits[i].iri));
    }
    std::size_t positive = 0;
    for (const auto& d : c.documents()) positive += oracle::bm25(c, q, d.iri) > 0 ? 1 : 0;
    EXPECT_EQ(hits.size(), positive);
  }
}

TEST(SearchIndexProperty, MonotoneInTermFrequency) {
  // Fixed length: one filler token is replaced by the query token each step.
  std::vector<Document> base = {{"http://x/other", "", "q filler filler filler filler"}};
  double last = 0;
  for (int k = 0; k <= 5; ++k) {
    std::string t;
    for (int i = 0; i < 5; ++i) t += i < k ? "q " : "pad ";
    auto docs = base;
    docs.push_back({"http://x/target", "", t});
    const double s = oracle::bm25(Corpus(docs), "q", "http://x/target");
    const SearchIndex idx{Corpus(docs)};
    double lib = 0;
    for (const auto& h : idx.search("q", 10)) {
      if (h.iri == "http://x/target") lib = h.score;
    }
    EXPECT_NEAR(lib, s, 1e-9);
    EXPECT_GE(lib, last);
    last = lib;
  }
}

TEST(SearchIndex, SaveLoadRoundTrip) {
  const SearchIndex idx(five_docs(), {1.5, 0.5});
  std::stringstream buf;
  idx.save(buf);
  const SearchIndex back = SearchIndex::load(buf);
  EXPECT_EQ(back, idx);
  EXPECT_EQ(back.search("red blue", 5), idx.search("red blue", 5));

  const auto path = std::filesystem::temp_directory_path() / "kgtext_index_roundtrip.bin";
  idx.save(path);
  EXPECT_EQ(SearchIndex::load(path), idx);
  std::filesystem::remove(path);
}

TEST(SearchIndex, LoadRejectsGarbage) {
  std::stringstream bad("not an index at all");
  EXPECT_THROW(SearchIndex::load(bad), std::runtime_error);
  const SearchIndex idx(five_docs());
  std::stringstream buf;
  idx.save(buf);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() / 2);
  std::stringstream truncated(bytes);
  EXPECT_THROW(SearchIndex::load(truncated), std::runtime_error);
}

}  // namespace
}  // namespace kgtext
