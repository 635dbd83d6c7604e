#pragma once

#include <memory>

#include "kgtext/config/app_config.hpp"
#include "kgtext/corpus/corpus.hpp"
#include "kgtext/corpus/lexicon.hpp"
#include "kgtext/corpus/search_index.hpp"
#include "kgtext/executor/executor.hpp"
#include "kgtext/extractors/registry.hpp"
#include "kgtext/kg/ingest.hpp"
#include "kgtext/tpf/fragment.hpp"

namespace kgtext {

/// Store, corpus, index, lexicon, registry, executor and fragment service
/// wired together. Members refer to each other, so the stack is pinned.
struct ServingStack {
  IngestStats ingest_stats;
  TripleStore store;
  Corpus corpus;
  SearchIndex index;
  Lexicon lexicon;
  ExtractorRegistry registry;
  std::unique_ptr<QaExecutor> executor;
  std::unique_ptr<FragmentService> service;

  ServingStack() = default;
  ServingStack(const ServingStack&) = delete;
  ServingStack& operator=(const ServingStack&) = delete;

  /// Loads every input named by `cfg`. The index is read from
  /// cfg.paths.index when that file exists and built from the corpus
  /// otherwise.
  static std::unique_ptr<ServingStack> open(const AppConfig& cfg);

  /// In-memory stack; `registry_json` empty means baseline only.
  static std::unique_ptr<ServingStack> from_parts(TripleStore store, Corpus corpus,
                                                  const std::string& registry_json = {},
                                                  ExecutorConfig exec = {},
                                                  std::size_t page_size = 100);

 private:
  void wire(const ExecutorConfig& exec, std::size_t page_size);
};

}  // namespace kgtext
