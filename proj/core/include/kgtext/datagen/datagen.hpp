#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgtext/corpus/anchor.hpp"
#include "kgtext/corpus/corpus.hpp"
#include "kgtext/corpus/lexicon.hpp"
#include "kgtext/kg/store.hpp"

namespace kgtext {

/// SP: subject and predicate given, object is the answer.
/// PO: predicate and object given, subject is the answer.
enum class Setting : unsigned char { kSP, kPO };

std::string_view to_string(Setting s);
/// Accepts "sp"/"SP"/"po"/"PO"; throws std::invalid_argument otherwise.
Setting parse_setting(std::string_view s);

enum class SettingSelection : unsigned char { kSP, kPO, kBoth };

struct ExtractionConfig {
  std::size_t max_type_pairings = 20;
  std::size_t max_examples = 300;
  std::size_t min_examples_after_cleaning = 30;
  std::optional<std::size_t> window_chars;
  SettingSelection setting = SettingSelection::kBoth;
  std::uint64_t split_seed = 20181029;
  /// Worker threads for extract_all; 1 runs sequentially.
  unsigned threads = 1;

  /// Throws std::invalid_argument if any count is zero.
  void validate() const;
  std::vector<Setting> settings() const;
};

using TypePair = std::pair<Term, Term>;

struct TypePairCount {
  TypePair pair;
  std::size_t count = 0;

  friend bool operator==(const TypePairCount&, const TypePairCount&) = default;
};

struct TrainingExample {
  Triple triple;
  Setting setting = Setting::kSP;
  std::string question;
  std::string answer;
  std::string doc_iri;
  std::string text;
  Anchor anchor;
  TypePair type_pair;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
  friend auto operator<=>(const TrainingExample&, const TrainingExample&) = default;
};

/// Per-stage counts. raw = kept + no_document + no_label + answer_absent.
struct CleaningStats {
  std::size_t raw = 0;
  std::size_t no_document = 0;
  std::size_t no_label = 0;
  std::size_t answer_absent = 0;
  std::size_t kept = 0;
  std::size_t type_pairs_used = 0;

  friend bool operator==(const CleaningStats&, const CleaningStats&) = default;
};

struct PredicateDataset {
  Term predicate;
  Setting setting = Setting::kSP;
  std::optional<std::string> predicate_label;
  std::vector<TrainingExample> examples;
  CleaningStats stats;
};

/// Type-pair frequencies for predicate `p`, count descending then pair
/// ascending. A triple counts toward (st, ot) when st is one of its
/// subject's types and ot one of its object's types. Zero counts omitted.
std::vector<TypePairCount> type_pair_frequencies(const TripleStore& store, const Term& p);

/// Training examples for one predicate in one setting: the top
/// max_type_pairings type pairs, up to max_examples triples each (visited in
/// (s, p, o) order), the subject's document as text in both settings, then
/// cleaning. An unknown predicate yields an empty dataset.
PredicateDataset extract_predicate(const TripleStore& store, const Corpus& corpus,
                                   const Lexicon& lexicon, const Term& p, Setting setting,
                                   const ExtractionConfig& cfg);

struct ExtractionReport {
  /// Datasets with at least min_examples_after_cleaning kept examples,
  /// sorted by (predicate, setting).
  std::vector<PredicateDataset> datasets;
  /// Stats for every (predicate, setting), including excluded ones.
  struct Entry {
    Term predicate;
    Setting setting;
    CleaningStats stats;
    bool included = false;
  };
  std::vector<Entry> stats;
};

ExtractionReport extract_all(const TripleStore& store, const Corpus& corpus,
                             const Lexicon& lexicon, const ExtractionConfig& cfg);

/// Seeded Fisher-Yates permutation of [0, n); the last floor(n/3) positions
/// form the test split. Returns sorted test indices.
std::vector<std::size_t> test_split(std::size_t n, std::uint64_t seed);

}  // namespace kgtext
