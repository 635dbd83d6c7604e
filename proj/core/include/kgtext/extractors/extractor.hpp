#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/corpus/lexicon.hpp"
#include "kgtext/datagen/datagen.hpp"
#include "kgtext/kg/store.hpp"

namespace kgtext {

/// Raised when an extractor cannot be reached or fails upstream.
class ExtractorUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a remote extractor answers with an invalid envelope.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RequestDocument {
  std::string iri;
  std::string text;
};

struct ExtractionRequest {
  std::string question;
  std::vector<RequestDocument> documents;
  std::size_t max_answers = 10;
  std::optional<std::size_t> window_chars;

  /// Throws std::invalid_argument unless max_answers >= 1 and documents is
  /// non-empty.
  void validate() const;
};

struct AnswerSpan {
  std::string doc_iri;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
  double score = 0.0;

  friend bool operator==(const AnswerSpan&, const AnswerSpan&) = default;
};

/// Total order used for every extractor's output: score descending, then
/// document IRI, start, end, text.
bool span_before(const AnswerSpan& a, const AnswerSpan& b);
void sort_spans(std::vector<AnswerSpan>& spans);

/// What the extractor is being asked to bind.
struct SlotQuery {
  TriplePattern pattern;
  Setting setting = Setting::kSP;
  std::string predicate_label;
};

class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual const std::string& id() const = 0;
  /// Spans sorted by span_before, at most req.max_answers. Must be safe to
  /// call concurrently.
  virtual std::vector<AnswerSpan> extract(const ExtractionRequest& req,
                                          const SlotQuery& query) const = 0;
};

/// Noun-phrase baseline.
///
/// Tokens are maximal runs of letters/digits. A noun phrase is a maximal run
/// of tokens that start with an uppercase ASCII letter or are all digits.
/// In each document the first whole-token, case-insensitive occurrence of
/// `predicate_label` is the mention; every noun phrase outside the mention
/// scores 1 / (1 + d), d being the token-index distance between the nearest
/// edges of phrase and mention. Phrases whose tokens all occur in
/// `question` are skipped, since they restate the bound entity. Documents
/// without a mention contribute nothing.
std::vector<AnswerSpan> extract_baseline(const ExtractionRequest& req,
                                         std::string_view predicate_label,
                                         std::string_view question = {});

/// Test oracle: true answers from match_pattern, anchored in the supplied
/// documents with find_anchor; one span per (answer, document) hit, score
/// 1.0. `pattern` must have exactly one variable, in subject or object
/// position, with a bound predicate.
std::vector<AnswerSpan> extract_gold(const ExtractionRequest& req, const TripleStore& store,
                                     const Lexicon& lexicon, const TriplePattern& pattern);

class BaselineExtractor final : public Extractor {
 public:
  explicit BaselineExtractor(std::string id = "baseline") : id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  std::vector<AnswerSpan> extract(const ExtractionRequest& req,
                                  const SlotQuery& query) const override;

 private:
  std::string id_;
};

class GoldExtractor final : public Extractor {
 public:
  GoldExtractor(const TripleStore& store, const Lexicon& lexicon, std::string id = "gold")
      : store_(store), lexicon_(lexicon), id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  std::vector<AnswerSpan> extract(const ExtractionRequest& req,
                                  const SlotQuery& query) const override;

 private:
  const TripleStore& store_;
  const Lexicon& lexicon_;
  std::string id_;
};

/// True when every span names a request document, lies inside it, has text
/// equal to the document slice and a score in [0, 1].
bool spans_valid(const ExtractionRequest& req, const std::vector<AnswerSpan>& spans);

}  // namespace kgtext
