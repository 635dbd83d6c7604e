#include <benchmark/benchmark.h>

#include "kgtext/config/stack.hpp"
#include "kgtext/corpus/search_index.hpp"
#include "synthetic.hpp"

namespace {

using namespace kgtext;

Corpus synthetic_corpus(std::size_t n) {
  fixture::Rng rng(1);
  std::vector<Document> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    for (int w = 0; w < 60; ++w) text += fixture::entity_label(fixture::pick(rng, 0, 5000)) + " ";
    docs.push_back({fixture::ex("d" + std::to_string(i)).value(), fixture::entity_label(i), text});
  }
  return Corpus(std::move(docs));
}

void BM_Bm25Search(benchmark::State& state) {
  const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)));
  const SearchIndex index(corpus);
  const std::string q = fixture::entity_label(17) + " " + fixture::entity_label(4242);
  for (auto _ : state) benchmark::DoNotOptimize(index.search(q, 10));
}
BENCHMARK(BM_Bm25Search)->Arg(1000)->Arg(10000);

void BM_MatchPattern(benchmark::State& state) {
  fixture::Rng rng(2);
  fixture::RandomStoreOptions opt;
  opt.entities = 2000;
  opt.triples = static_cast<std::size_t>(state.range(0));
  const auto triples = fixture::random_triples(rng, opt);
  const TripleStore store(triples);
  std::vector<TriplePattern> pats;
  for (int i = 0; i < 64; ++i) pats.push_back(fixture::random_pattern(rng, triples));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(match_pattern(store, pats[i++ % pats.size()]));
}
BENCHMARK(BM_MatchPattern)->Arg(10000)->Arg(100000);

void BM_AnswerPattern(benchmark::State& state) {
  fixture::Rng rng(3);
  fixture::GoldWorldOptions opt;
  opt.entities = static_cast<std::size_t>(state.range(0));
  opt.triples = opt.entities * 3;
  auto w = fixture::gold_world(rng, opt);
  const auto stack = ServingStack::from_parts(std::move(w.store), std::move(w.corpus));
  const TriplePattern tp(fixture::ex("e1"), fixture::ex("p0"), Term::variable("o"));
  for (auto _ : state) benchmark::DoNotOptimize(stack->executor->answer(tp));
}
BENCHMARK(BM_AnswerPattern)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
