#include <gtest/gtest.h>

#include <set>

#include "kgtext/executor/executor.hpp"
#include "synthetic.hpp"

namespace kgtext {
namespace {

using fixture::ex;
using fixture::lit;

// Returns a fixed span list, whatever the request.
class FixedExtractor final : public Extractor {
 public:
  FixedExtractor(std::string id, std::vector<AnswerSpan> spans) : id_(std::move(id)), spans_(std::move(spans)) {}
  const std::string& id() const override { return id_; }
  std::vector<AnswerSpan> extract(const ExtractionRequest&, const SlotQuery&) const override { return spans_; }

 private:
  std::string id_;
  std::vector<AnswerSpan> spans_;
};

class ThrowingExtractor final : public Extractor {
 public:
  const std::string& id() const override { return id_; }
  std::vector<AnswerSpan> extract(const ExtractionRequest&, const SlotQuery&) const override {
    throw ExtractorUnavailable("down");
  }

 private:
  std::string id_ = "down";
};

struct Amsterdam {
  TripleStore store;
  Corpus corpus;
  SearchIndex index;
  Lexicon lexicon;
  Amsterdam() {
    const Term label = Term::iri(std::string(kRdfsLabel));
    store = TripleStore({{ex("Q727"), label, lit("Amsterdam")},
                         {ex("QNL"), label, lit("Netherlands")},
                         {ex("capital_of"), label, lit("capital of")},
                         {ex("Q727"), ex("capital_of"), ex("QNL")},
                         {ex("nolabel"), ex("capital_of"), ex("QNL")}});
    corpus = Corpus({{ex("Q727").value(), "Amsterdam", "Amsterdam is the capital of the Netherlands."}});
    index = SearchIndex(corpus);
    lexicon = Lexicon::from_store(store);
  }
};

TEST(ClassifyPattern, Shapes) {
  const Term v = Term::variable("v");
  EXPECT_EQ(classify_pattern({ex("a"), ex("p"), Term::variable("o")}), PatternShape::kSP);
  EXPECT_EQ(classify_pattern({Term::variable("s"), ex("p"), ex("b")}), PatternShape::kPO);
  EXPECT_EQ(classify_pattern({Term::variable("s"), ex("p"), lit("b")}), PatternShape::kPO);
  EXPECT_EQ(classify_pattern({ex("a"), ex("p"), ex("b")}), PatternShape::kFullyBound);
  EXPECT_EQ(classify_pattern({Term::variable("s"), Term::variable("p"), Term::variable("o")}),
            PatternShape::kUnsupported);
  EXPECT_EQ(classify_pattern({ex("a"), Term::variable("p"), ex("b")}), PatternShape::kUnsupported);
  EXPECT_EQ(classify_pattern({v, ex("p"), v}), PatternShape::kUnsupported);
  EXPECT_EQ(classify_pattern({Term::variable("s"), ex("p"), Term::variable("o")}), PatternShape::kUnsupported);
}

TEST(BuildModelQuery, Examples) {
  const Amsterdam w;
  EXPECT_EQ(build_model_query({ex("Q727"), ex("capital_of"), Term::variable("o")}, w.lexicon), "Amsterdam capital of");
  EXPECT_EQ(build_model_query({Term::variable("s"), ex("capital_of"), ex("QNL")}, w.lexicon), "Netherlands capital of");
  EXPECT_EQ(build_model_query({Term::variable("s"), ex("capital_of"), lit("NL")}, w.lexicon), "NL capital of");
  try {
    build_model_query({ex("nolabel"), ex("capital_of"), Term::variable("o")}, w.lexicon);
    FAIL();
  } catch (const LexicalizationError& e) {
    EXPECT_EQ(e.iri(), ex("nolabel").value());
  }
}

TEST(AnswerKey, Normalization) {
  EXPECT_EQ(answer_key("  The  Hague. "), "the hague");
  EXPECT_EQ(answer_key("\"Paris\""), "paris");
  EXPECT_EQ(answer_key("U.S.A."), "u.s.a");
}

ExtractorRegistry fixed_registry(std::vector<AnswerSpan> spans) {
  ExtractorRegistry reg;
  ExtractorDescriptor d;
  d.id = "fixed";
  reg.add(d, std::make_unique<FixedExtractor>("fixed", std::move(spans)));
  return reg;
}

TEST(Executor, DedupeKeepsBestScore) {
  const Amsterdam w;
  const std::string doc = ex("Q727").value();
  const auto reg = fixed_registry({{doc, 32, 43, "Netherlands", 0.7}, {doc, 32, 43, "netherlands", 0.9}});
  const auto r = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                                w.lexicon, reg);
  ASSERT_EQ(r.bindings.size(), 1u);
  EXPECT_EQ(r.bindings[0].score, 0.9);
  EXPECT_EQ(r.bindings[0].binding.get("o"), ex("QNL"));
  EXPECT_EQ(r.estimated_total, 1u);
  EXPECT_EQ(r.extractor_id, "fixed");
}

TEST(Executor, CutoffDropsEverything) {
  const Amsterdam w;
  const std::string doc = ex("Q727").value();
  const auto reg = fixed_registry({{doc, 32, 43, "Netherlands", 0.05}, {doc, 0, 9, "Amsterdam", 0.09}});
  const auto r = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                                w.lexicon, reg);
  EXPECT_TRUE(r.bindings.empty());
  EXPECT_EQ(r.estimated_total, 0u);
}

TEST(Executor, CutoffMonotone) {
  const Amsterdam w;
  const std::string doc = ex("Q727").value();
  const auto reg = fixed_registry({{doc, 32, 43, "Netherlands", 0.8}, {doc, 0, 9, "Amsterdam", 0.3},
                                   {doc, 17, 24, "capital", 0.5}, {doc, 13, 16, "the", 0.15}});
  std::size_t last = 100;
  for (double cut : {0.0, 0.1, 0.2, 0.4, 0.6, 0.9, 1.0}) {
    ExecutorConfig cfg;
    cfg.score_cutoff = cut;
    const auto r = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, cfg, w.corpus, w.index,
                                  w.lexicon, reg);
    EXPECT_LE(r.bindings.size(), last);
    last = r.bindings.size();
    for (const auto& b : r.bindings) EXPECT_GE(b.score, cut);
  }
}

TEST(Executor, UnresolvedAnswersBecomeLiteralsExceptInSubjectPosition) {
  const Amsterdam w;
  const std::string doc = ex("Q727").value();
  const auto reg = fixed_registry({{doc, 32, 43, "Netherlands", 0.9}, {doc, 17, 24, "capital", 0.5}});
  const auto sp = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                                 w.lexicon, reg);
  ASSERT_EQ(sp.bindings.size(), 2u);
  EXPECT_EQ(sp.bindings[1].binding.get("o"), lit("capital"));
  EXPECT_EQ(sp.bindings[1].evidence.text, "capital");
  const auto po = answer_pattern({Term::variable("s"), ex("capital_of"), ex("QNL")}, {}, w.corpus, w.index,
                                 w.lexicon, reg);
  ASSERT_EQ(po.bindings.size(), 1u);
  EXPECT_EQ(po.bindings[0].binding.get("s"), ex("QNL"));
}

TEST(Executor, FullyBound) {
  const Amsterdam w;
  const std::string doc = ex("Q727").value();
  const auto reg = fixed_registry({{doc, 32, 43, "Netherlands", 0.9}});
  const auto yes = answer_pattern({ex("Q727"), ex("capital_of"), ex("QNL")}, {}, w.corpus, w.index, w.lexicon, reg);
  ASSERT_EQ(yes.bindings.size(), 1u);
  EXPECT_TRUE(yes.bindings[0].binding.empty());
  const auto no = answer_pattern({ex("Q727"), ex("capital_of"), ex("Q727")}, {}, w.corpus, w.index, w.lexicon, reg);
  EXPECT_TRUE(no.bindings.empty());
}

TEST(Executor, Errors) {
  const Amsterdam w;
  const ExtractorRegistry base;
  EXPECT_THROW(answer_pattern({Term::variable("s"), Term::variable("p"), Term::variable("o")}, {}, w.corpus, w.index,
                              w.lexicon, base),
               UnsupportedPatternError);
  EXPECT_THROW(answer_pattern({ex("nolabel"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                              w.lexicon, base),
               LexicalizationError);
  ExtractorRegistry down;
  down.add(ExtractorDescriptor{"down"}, std::make_unique<ThrowingExtractor>());
  EXPECT_THROW(answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                              w.lexicon, down),
               UpstreamExtractorError);
  ExecutorConfig bad;
  bad.candidate_docs = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.score_cutoff = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Executor, EmptyCorpusIsEmptyResult) {
  const Amsterdam w;
  const Corpus empty;
  const SearchIndex idx(empty);
  const ExtractorRegistry base;
  const auto r = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, empty, idx, w.lexicon, base);
  EXPECT_TRUE(r.bindings.empty());
}

TEST(Executor, BaselineEndToEnd) {
  const Amsterdam w;
  const ExtractorRegistry base;
  const auto r = answer_pattern({ex("Q727"), ex("capital_of"), Term::variable("o")}, {}, w.corpus, w.index,
                                w.lexicon, base);
  ASSERT_FALSE(r.bindings.empty());
  EXPECT_EQ(r.bindings[0].binding.get("o"), ex("QNL"));
  EXPECT_EQ(r.extractor_id, "baseline");
}

ExecutorConfig wide() {
  ExecutorConfig cfg;
  cfg.candidate_docs = 1000;
  cfg.max_answers = 100000;
  return cfg;
}

std::set<Binding> bindings_of(const QueryResult& r) {
  std::set<Binding> out;
  for (const auto& b : r.bindings) out.insert(b.binding);
  return out;
}

TEST(ExecutorProperty, GoldPathCompleteness) {
  fixture::Rng rng(61);
  std::size_t patterns = 0;
  for (int round = 0; round < 100; ++round) {
    const auto w = fixture::gold_world(rng);
    const SearchIndex idx(w.corpus);
    const auto reg = ExtractorRegistry::from_json(fixture::kGoldRegistry, &w.store, &w.lexicon);
    for (bool parallel : {false, true}) {
      ExecutorConfig cfg = wide();
      cfg.parallel_documents = parallel;
      const QaExecutor exec(w.corpus, idx, w.lexicon, reg, cfg);
      std::set<Term> objects;
      for (const Triple& t : w.store.triples()) {
        if (t.p.value() == kRdfsLabel) continue;
        objects.insert(t.o);
        const TriplePattern sp(t.s, t.p, Term::variable("o"));
        const auto r = exec.answer(sp);
        const auto truth = match_pattern(w.store, sp);
        EXPECT_EQ(bindings_of(r), std::set<Binding>(truth.begin(), truth.end())) << sp.to_string();
        for (const auto& b : r.bindings) {
          EXPECT_EQ(b.score, 1.0);
          EXPECT_EQ(b.evidence.text, w.corpus.find(b.evidence.doc_iri)->text.substr(b.evidence.start,
                                                                                      b.evidence.end - b.evidence.start));
        }
        const TriplePattern po(Term::variable("s"), t.p, t.o);
        const auto truth_po = match_pattern(w.store, po);
        EXPECT_EQ(bindings_of(exec.answer(po)), std::set<Binding>(truth_po.begin(), truth_po.end())) << po.to_string();
        EXPECT_EQ(exec.answer(TriplePattern(t.s, t.p, t.o)).bindings.size(), 1u);
        patterns += 3;
      }
    }
  }
  EXPECT_GT(patterns, 10000u);
}

TEST(ExecutorProperty, Deterministic) {
  fixture::Rng rng(62);
  const auto w = fixture::gold_world(rng);
  const SearchIndex idx(w.corpus);
  const ExtractorRegistry base;
  const QaExecutor exec(w.corpus, idx, w.lexicon, base);
  for (const Triple& t : w.store.triples()) {
    if (t.p.value() == kRdfsLabel) continue;
    const TriplePattern sp(t.s, t.p, Term::variable("o"));
    const auto a = exec.answer(sp);
    const auto b = exec.answer(sp);
    EXPECT_EQ(a.bindings, b.bindings);
  }
}

}  // namespace
}  // namespace kgtext
