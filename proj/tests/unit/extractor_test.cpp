#include <gtest/gtest.h>

#include "kgtext/extractors/extractor.hpp"
#include "synthetic.hpp"

namespace kgtext {
namespace {

using fixture::ex;
using fixture::lit;

ExtractionRequest one_doc(const std::string& text, std::size_t max_answers = 10) {
  ExtractionRequest r;
  r.documents = {{"http://x/doc", text}};
  r.max_answers = max_answers;
  return r;
}

TEST(Baseline, HandTracedCapital) {
  const auto spans = extract_baseline(one_doc("Paris is the capital of France"), "capital");
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].text, "France");
  EXPECT_DOUBLE_EQ(spans[0].score, 1.0 / 3.0);
  EXPECT_EQ(spans[1].text, "Paris");
  EXPECT_DOUBLE_EQ(spans[1].score, 1.0 / 4.0);
  EXPECT_TRUE(spans_valid(one_doc("Paris is the capital of France"), spans));
}

TEST(Baseline, NoMentionOrNoPhrases) {
  EXPECT_TRUE(extract_baseline(one_doc("Paris is lovely in France"), "capital").empty());
  EXPECT_TRUE(extract_baseline(one_doc("the capital is here"), "capital").empty());
  EXPECT_THROW(extract_baseline(one_doc("x"), " "), std::invalid_argument);
}

TEST(Baseline, TemplateFamilyAnswersCapital) {
  // The country is named in the question, so only the capital remains.
  const auto spans =
      extract_baseline(one_doc("Beltisvin is a country. Beltisvin's capital is Oranport."), "capital",
                       "Beltisvin capital");
  ASSERT_FALSE(spans.empty());
  EXPECT_EQ(spans[0].text, "Oranport");
  EXPECT_DOUBLE_EQ(spans[0].score, 1.0 / 3.0);
}

TEST(Baseline, MultiWordPhrasesAndLabels) {
  const auto spans =
      extract_baseline(one_doc("the head of state of New South Wales is King Charles III, 2023."), "head of state");
  ASSERT_FALSE(spans.empty());
  std::vector<std::string> texts;
  for (const auto& s : spans) texts.push_back(s.text);
  EXPECT_NE(std::find(texts.begin(), texts.end(), "New South Wales"), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "King Charles III"), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "2023"), texts.end());
  EXPECT_EQ(spans[0].text, "New South Wales");
}

TEST(Baseline, MergesDocumentsAndTruncates) {
  ExtractionRequest r;
  r.documents = {{"http://x/b", "Alpha capital Beta"}, {"http://x/a", "Gamma capital Delta"}};
  r.max_answers = 3;
  const auto spans = extract_baseline(r, "capital");
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].doc_iri, "http://x/a");
  EXPECT_EQ(spans[0].text, "Gamma");
  EXPECT_EQ(spans[1].text, "Delta");
  EXPECT_EQ(spans[2].doc_iri, "http://x/b");
  for (std::size_t i = 1; i < spans.size(); ++i) EXPECT_TRUE(span_before(spans[i - 1], spans[i]));
}

TEST(Baseline, Deterministic) {
  const auto r = one_doc("Rome is the capital of Italy and Milan is not the capital of Italy.");
  EXPECT_EQ(extract_baseline(r, "capital"), extract_baseline(r, "capital"));
}

struct GoldFixture {
  TripleStore store;
  Lexicon lexicon;
  GoldFixture() {
    const Term label = Term::iri(std::string(kRdfsLabel));
    store = TripleStore({{ex("fr"), label, lit("France")},
                         {ex("paris"), label, lit("Paris")},
                         {ex("lyon"), label, lit("Lyon")},
                         {ex("fr"), ex("city"), ex("paris")},
                         {ex("fr"), ex("city"), ex("lyon")},
                         {ex("fr"), ex("motto"), lit("Liberty")}});
    lexicon = Lexicon::from_store(store);
  }
};

TEST(Gold, SingleAnswer) {
  GoldFixture g;
  const auto spans = extract_gold(one_doc("France has Paris."), g.store, g.lexicon,
                                  {ex("fr"), ex("city"), Term::variable("o")});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "Paris");
  EXPECT_EQ(spans[0].score, 1.0);
}

TEST(Gold, AbsentAnswerAndLiteral) {
  GoldFixture g;
  EXPECT_TRUE(extract_gold(one_doc("Nothing here."), g.store, g.lexicon, {ex("fr"), ex("city"), Term::variable("o")})
                  .empty());
  const auto lit_spans = extract_gold(one_doc("Motto: Liberty."), g.store, g.lexicon,
                                      {ex("fr"), ex("motto"), Term::variable("o")});
  ASSERT_EQ(lit_spans.size(), 1u);
  EXPECT_EQ(lit_spans[0].text, "Liberty");
}

TEST(Gold, TwoAnswersOrderedByDocThenOffset) {
  GoldFixture g;
  ExtractionRequest r;
  r.documents = {{"http://x/b", "Lyon and Paris"}, {"http://x/a", "Paris then Lyon"}};
  const auto spans = extract_gold(r, g.store, g.lexicon, {ex("fr"), ex("city"), Term::variable("o")});
  ASSERT_EQ(spans.size(), 4u);
  EXPECT_EQ(spans[0].doc_iri, "http://x/a");
  EXPECT_EQ(spans[0].text, "Paris");
  EXPECT_EQ(spans[1].text, "Lyon");
  EXPECT_EQ(spans[2].doc_iri, "http://x/b");
  EXPECT_EQ(spans[2].text, "Lyon");
  EXPECT_TRUE(spans_valid(r, spans));
}

TEST(Gold, PoShapeAndBadShape) {
  GoldFixture g;
  const auto spans = extract_gold(one_doc("France is big."), g.store, g.lexicon,
                                  {Term::variable("s"), ex("city"), ex("paris")});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "France");
  EXPECT_THROW(extract_gold(one_doc("x"), g.store, g.lexicon, {Term::variable("s"), ex("city"), Term::variable("o")}),
               std::invalid_argument);
}

TEST(Spans, ValidityChecks) {
  const auto r = one_doc("abc def");
  EXPECT_TRUE(spans_valid(r, {{"http://x/doc", 4, 7, "def", 0.5}}));
  EXPECT_FALSE(spans_valid(r, {{"http://x/doc", 4, 8, "def", 0.5}}));
  EXPECT_FALSE(spans_valid(r, {{"http://x/doc", 4, 7, "xyz", 0.5}}));
  EXPECT_FALSE(spans_valid(r, {{"http://x/other", 4, 7, "def", 0.5}}));
  EXPECT_FALSE(spans_valid(r, {{"http://x/doc", 4, 7, "def", 1.5}}));
}

TEST(Spans, TotalOrder) {
  std::vector<AnswerSpan> v = {{"b", 0, 1, "x", 0.5}, {"a", 2, 3, "y", 0.5}, {"a", 0, 1, "x", 0.5}, {"z", 0, 1, "x", 0.9}};
  sort_spans(v);
  EXPECT_EQ(v[0].doc_iri, "z");
  EXPECT_EQ(v[1].doc_iri, "a");
  EXPECT_EQ(v[1].start, 0u);
  EXPECT_EQ(v[2].start, 2u);
  EXPECT_EQ(v[3].doc_iri, "b");
}

TEST(ExtractionRequest, Validation) {
  ExtractionRequest r;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r.documents = {{"d", "t"}};
  EXPECT_NO_THROW(r.validate());
  r.max_answers = 0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace kgtext
