#include "kgtext/config/stack.hpp"

#include <filesystem>

namespace kgtext {

void ServingStack::wire(const ExecutorConfig& exec, std::size_t page_size) {
  executor = std::make_unique<QaExecutor>(corpus, index, lexicon, registry, exec);
  service = std::make_unique<FragmentService>(*executor, page_size);
}

std::unique_ptr<ServingStack> ServingStack::open(const AppConfig& cfg) {
  cfg.validate();
  cfg.check_paths();
  auto s = std::make_unique<ServingStack>();
  auto ingested = ingest_file(cfg.paths.store, cfg.ingest);
  s->store = std::move(ingested.store);
  s->ingest_stats = ingested.stats;
  s->corpus = load_corpus_jsonl(std::filesystem::path(cfg.paths.corpus));
  if (!cfg.paths.index.empty() && std::filesystem::exists(cfg.paths.index)) {
    s->index = SearchIndex::load(std::filesystem::path(cfg.paths.index));
  } else {
    s->index = SearchIndex(s->corpus);
  }
  s->lexicon = cfg.paths.lexicon.empty()
                   ? Lexicon::from_store(s->store)
                   : Lexicon::from_tsv(std::filesystem::path(cfg.paths.lexicon), &s->store);
  if (!cfg.paths.registry.empty()) {
    s->registry = ExtractorRegistry::load(cfg.paths.registry, &s->store, &s->lexicon);
  }
  s->wire(cfg.executor, cfg.server.page_size);
  return s;
}

std::unique_ptr<ServingStack> ServingStack::from_parts(TripleStore store, Corpus corpus,
                                                       const std::string& registry_json,
                                                       ExecutorConfig exec, std::size_t page_size) {
  auto s = std::make_unique<ServingStack>();
  s->store = std::move(store);
  s->corpus = std::move(corpus);
  s->index = SearchIndex(s->corpus);
  s->lexicon = Lexicon::from_store(s->store);
  if (!registry_json.empty()) {
    s->registry = ExtractorRegistry::from_json(registry_json, &s->store, &s->lexicon);
  }
  s->wire(exec, page_size);
  return s;
}

}  // namespace kgtext
