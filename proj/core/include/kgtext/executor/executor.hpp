#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgtext/corpus/corpus.hpp"
#include "kgtext/corpus/lexicon.hpp"
#include "kgtext/corpus/search_index.hpp"
#include "kgtext/extractors/registry.hpp"

namespace kgtext {

enum class PatternShape { kSP, kPO, kFullyBound, kUnsupported };

std::string_view to_string(PatternShape shape);

/// SP: (s, p, ?o). PO: (?s, p, o). FULLY_BOUND: no variables. Anything else,
/// including a variable predicate, is unsupported.
PatternShape classify_pattern(const TriplePattern& tp);

class UnsupportedPatternError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bound IRI has no label.
class LexicalizationError : public std::runtime_error {
 public:
  LexicalizationError(const std::string& iri)
      : std::runtime_error("no label for <" + iri + ">"), iri_(iri) {}
  const std::string& iri() const { return iri_; }

 private:
  std::string iri_;
};

/// An extractor failed while answering a pattern.
class UpstreamExtractorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SP → label(s) + " " + label(p); PO → label(o) + " " + label(p). A literal
/// object is used as-is.
std::string build_model_query(const TriplePattern& tp, const Lexicon& lexicon);

struct ExecutorConfig {
  std::size_t candidate_docs = 10;
  std::size_t max_answers = 10;
  double score_cutoff = 0.1;
  /// Extract per document concurrently instead of one request over all
  /// candidates. Results are identical either way.
  bool parallel_documents = false;

  /// Throws std::invalid_argument if candidate_docs == 0, max_answers == 0
  /// or the cutoff is outside [0, 1].
  void validate() const;
};

struct RankedBinding {
  Binding binding;
  double score = 0.0;
  AnswerSpan evidence;

  friend bool operator==(const RankedBinding&, const RankedBinding&) = default;
};

struct QueryResult {
  TriplePattern pattern;
  std::vector<RankedBinding> bindings;  ///< score descending, then binding
  std::size_t estimated_total = 0;
  std::string extractor_id;
};

/// Lowercase, collapse whitespace, strip leading/trailing ASCII punctuation.
std::string answer_key(std::string_view answer);

/// Answers single triple patterns over the corpus.
///
/// Pipeline: lexicalize the bound terms, retrieve candidate_docs documents
/// with BM25, run the registered extractor for (predicate, setting), merge
/// spans with the same answer_key keeping the best score, drop scores below
/// the cutoff, map answers back to terms through the lexicon and emit one
/// binding per distinct term. A fully bound pattern runs the SP pipeline and
/// yields the empty binding iff some answer maps to the bound object.
class QaExecutor {
 public:
  QaExecutor(const Corpus& corpus, const SearchIndex& index, const Lexicon& lexicon,
             const ExtractorRegistry& registry, ExecutorConfig config = {});

  /// Throws UnsupportedPatternError, LexicalizationError or
  /// UpstreamExtractorError.
  QueryResult answer(const TriplePattern& tp) const;

  const ExecutorConfig& config() const { return config_; }
  const Lexicon& lexicon() const { return lexicon_; }

 private:
  std::vector<AnswerSpan> run_extractor(const Extractor& ex, const ExtractionRequest& req,
                                        const SlotQuery& query) const;

  const Corpus& corpus_;
  const SearchIndex& index_;
  const Lexicon& lexicon_;
  const ExtractorRegistry& registry_;
  ExecutorConfig config_;
};

inline QueryResult answer_pattern(const TriplePattern& tp, const ExecutorConfig& cfg,
                                  const Corpus& corpus, const SearchIndex& index,
                                  const Lexicon& lexicon, const ExtractorRegistry& registry) {
  return QaExecutor(corpus, index, lexicon, registry, cfg).answer(tp);
}

}  // namespace kgtext
