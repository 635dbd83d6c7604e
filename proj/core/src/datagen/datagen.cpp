#include "kgtext/datagen/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "kgtext/util/text.hpp"

namespace kgtext {

std::string_view to_string(Setting s) { return s == Setting::kSP ? "SP" : "PO"; }

Setting parse_setting(std::string_view s) {
  const std::string lower = text::ascii_lower(s);
  if (lower == "sp") return Setting::kSP;
  if (lower == "po") return Setting::kPO;
  throw std::invalid_argument("unknown setting '" + std::string(s) + "' (expected sp or po)");
}

void ExtractionConfig::validate() const {
  if (max_type_pairings == 0 || max_examples == 0 || min_examples_after_cleaning == 0) {
    throw std::invalid_argument("extraction counts must be >= 1");
  }
  if (window_chars && *window_chars == 0) throw std::invalid_argument("window_chars must be >= 1");
}

std::vector<Setting> ExtractionConfig::settings() const {
  switch (setting) {
    case SettingSelection::kSP: return {Setting::kSP};
    case SettingSelection::kPO: return {Setting::kPO};
    case SettingSelection::kBoth: return {Setting::kSP, Setting::kPO};
  }
  return {};
}

std::vector<TypePairCount> type_pair_frequencies(const TripleStore& store, const Term& p) {
  std::map<TypePair, std::size_t> counts;
  for (const Triple* t : store.with_predicate(p)) {
    const auto& subject_types = store.types_of(t->s);
    const auto& object_types = store.types_of(t->o);
    for (const Term& st : subject_types) {
      for (const Term& ot : object_types) ++counts[{st, ot}];
    }
  }
  std::vector<TypePairCount> out;
  out.reserve(counts.size());
  for (auto& [pair, c] : counts) out.push_back({pair, c});
  std::stable_sort(out.begin(), out.end(),
                   [](const TypePairCount& a, const TypePairCount& b) { return a.count > b.count; });
  return out;
}

PredicateDataset extract_predicate(const TripleStore& store, const Corpus& corpus,
                                   const Lexicon& lexicon, const Term& p, Setting setting,
                                   const ExtractionConfig& cfg) {
  cfg.validate();
  PredicateDataset ds;
  ds.predicate = p;
  ds.setting = setting;
  ds.predicate_label = lexicon.label_of(p.value());

  const auto pairs = type_pair_frequencies(store, p);
  const auto triples = store.with_predicate(p);
  const std::size_t n_pairs = std::min(pairs.size(), cfg.max_type_pairings);
  ds.stats.type_pairs_used = n_pairs;

  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto& [st, ot] = pairs[i].pair;
    std::size_t taken = 0;
    for (const Triple* t : triples) {
      if (taken == cfg.max_examples) break;
      if (!store.types_of(t->s).contains(st) || !store.types_of(t->o).contains(ot)) continue;
      ++taken;
      ++ds.stats.raw;

      const Document* doc = corpus.find(t->s.value());
      if (doc == nullptr) {
        ++ds.stats.no_document;
        continue;
      }
      const auto s_label = lexicon.label_of(t->s.value());
      const auto o_label = lexicon.label_of(t->o.value());
      if (!s_label || !o_label || !ds.predicate_label) {
        ++ds.stats.no_label;
        continue;
      }
      TrainingExample ex;
      ex.triple = *t;
      ex.setting = setting;
      if (setting == Setting::kSP) {
        ex.question = *s_label + " " + *ds.predicate_label;
        ex.answer = *o_label;
      } else {
        ex.question = *o_label + " " + *ds.predicate_label;
        ex.answer = *s_label;
      }
      ex.doc_iri = doc->iri;
      ex.type_pair = pairs[i].pair;

      const auto anchor = find_anchor(doc->text, ex.answer);
      if (!anchor) {
        ++ds.stats.answer_absent;
        continue;
      }
      if (cfg.window_chars) {
        if (text::utf8_length(anchor->slice(doc->text)) > *cfg.window_chars) {
          ++ds.stats.answer_absent;
          continue;
        }
        Window w = window(doc->text, *anchor, *cfg.window_chars);
        ex.text = std::move(w.text);
        ex.anchor = w.anchor;
      } else {
        ex.text = doc->text;
        ex.anchor = *anchor;
      }
      ds.examples.push_back(std::move(ex));
    }
  }
  ds.stats.kept = ds.examples.size();
  return ds;
}

ExtractionReport extract_all(const TripleStore& store, const Corpus& corpus,
                             const Lexicon& lexicon, const ExtractionConfig& cfg) {
  cfg.validate();
  struct Job {
    Term predicate;
    Setting setting;
  };
  std::vector<Job> jobs;
  for (const Term& p : store.predicates()) {
    for (Setting s : cfg.settings()) jobs.push_back({p, s});
  }

  std::vector<PredicateDataset> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = extract_predicate(store, corpus, lexicon, jobs[i].predicate, jobs[i].setting, cfg);
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  ExtractionReport report;
  for (auto& ds : results) {
    const bool included = ds.stats.kept >= cfg.min_examples_after_cleaning;
    report.stats.push_back({ds.predicate, ds.setting, ds.stats, included});
    if (included) report.datasets.push_back(std::move(ds));
  }
  return report;
}

std::vector<std::size_t> test_split(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  // mt19937_64 output is fully specified by the standard; the distribution
  // classes are not, so draw indices directly.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  const std::size_t test_count = n / 3;
  std::vector<std::size_t> test(perm.end() - static_cast<std::ptrdiff_t>(test_count), perm.end());
  std::sort(test.begin(), test.end());
  return test;
}

}  // namespace kgtext
