#include "kgtext/executor/executor.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <set>
#include <unordered_set>

#include "kgtext/util/text.hpp"

namespace kgtext {

std::string_view to_string(PatternShape shape) {
  switch (shape) {
    case PatternShape::kSP: return "SP";
    case PatternShape::kPO: return "PO";
    case PatternShape::kFullyBound: return "FULLY_BOUND";
    case PatternShape::kUnsupported: return "UNSUPPORTED";
  }
  return "UNSUPPORTED";
}

PatternShape classify_pattern(const TriplePattern& tp) {
  const bool s = tp.s.is_variable();
  const bool p = tp.p.is_variable();
  const bool o = tp.o.is_variable();
  if (p) return PatternShape::kUnsupported;
  if (!s && !o) return PatternShape::kFullyBound;
  if (!s && o) return PatternShape::kSP;
  if (s && !o) return PatternShape::kPO;
  return PatternShape::kUnsupported;
}

namespace {

std::string lexicalize(const Term& t, const Lexicon& lexicon) {
  if (t.is_literal()) return t.value();
  auto label = lexicon.label_of(t.value());
  if (!label) throw LexicalizationError(t.value());
  return *label;
}

}  // namespace

std::string build_model_query(const TriplePattern& tp, const Lexicon& lexicon) {
  switch (classify_pattern(tp)) {
    case PatternShape::kSP: return lexicalize(tp.s, lexicon) + " " + lexicalize(tp.p, lexicon);
    case PatternShape::kPO: return lexicalize(tp.o, lexicon) + " " + lexicalize(tp.p, lexicon);
    default:
      throw UnsupportedPatternError("model queries need an SP or PO pattern: " + tp.to_string());
  }
}

void ExecutorConfig::validate() const {
  if (candidate_docs == 0) throw std::invalid_argument("candidate_docs must be >= 1");
  if (max_answers == 0) throw std::invalid_argument("max_answers must be >= 1");
  if (!(score_cutoff >= 0.0 && score_cutoff <= 1.0)) {
    throw std::invalid_argument("score_cutoff must be within [0, 1]");
  }
}

std::string answer_key(std::string_view answer) {
  std::string folded = text::fold(answer);
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  std::size_t b = 0;
  std::size_t e = folded.size();
  while (b < e && punct(folded[b])) ++b;
  while (e > b && punct(folded[e - 1])) --e;
  return text::collapse_whitespace(std::string_view(folded).substr(b, e - b));
}

QaExecutor::QaExecutor(const Corpus& corpus, const SearchIndex& index, const Lexicon& lexicon,
                       const ExtractorRegistry& registry, ExecutorConfig config)
    : corpus_(corpus), index_(index), lexicon_(lexicon), registry_(registry), config_(config) {
  config_.validate();
}

std::vector<AnswerSpan> QaExecutor::run_extractor(const Extractor& ex, const ExtractionRequest& req,
                                                  const SlotQuery& query) const {
  if (!config_.parallel_documents || req.documents.size() < 2) return ex.extract(req, query);
  std::vector<std::future<std::vector<AnswerSpan>>> parts;
  parts.reserve(req.documents.size());
  for (const RequestDocument& doc : req.documents) {
    parts.push_back(std::async(std::launch::async, [&ex, &req, &query, doc] {
      ExtractionRequest one{req.question, {doc}, req.max_answers, req.window_chars};
      return ex.extract(one, query);
    }));
  }
  std::vector<AnswerSpan> spans;
  for (auto& f : parts) {
    auto part = f.get();
    spans.insert(spans.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_spans(spans);
  if (spans.size() > req.max_answers) spans.resize(req.max_answers);
  return spans;
}

QueryResult QaExecutor::answer(const TriplePattern& tp) const {
  const PatternShape shape = classify_pattern(tp);
  if (shape == PatternShape::kUnsupported) {
    throw UnsupportedPatternError("unsupported pattern shape: " + tp.to_string());
  }
  QueryResult result;
  result.pattern = tp;

  // Fully bound patterns are verified through the SP pipeline.
  const TriplePattern slot = shape == PatternShape::kFullyBound
                                 ? TriplePattern(tp.s, tp.p, Term::variable("o"))
                                 : tp;
  const Setting setting = shape == PatternShape::kPO ? Setting::kPO : Setting::kSP;
  const Term& var_term = setting == Setting::kSP ? slot.o : slot.s;

  ExtractionRequest req;
  req.question = build_model_query(slot, lexicon_);
  req.max_answers = config_.max_answers;
  for (const SearchHit& hit : index_.search(req.question, config_.candidate_docs)) {
    if (const Document* doc = corpus_.find(hit.iri)) req.documents.push_back({doc->iri, doc->text});
  }
  const Extractor& extractor = registry_.resolve(slot.p, setting);
  result.extractor_id = extractor.id();
  if (req.documents.empty()) return result;

  const SlotQuery query{slot, setting, *lexicon_.label_of(slot.p.value())};
  std::vector<AnswerSpan> spans;
  try {
    spans = run_extractor(extractor, req, query);
  } catch (const ExtractorUnavailable& e) {
    throw UpstreamExtractorError("pattern " + tp.to_string() + ": " + e.what());
  } catch (const ProtocolError& e) {
    throw UpstreamExtractorError("pattern " + tp.to_string() + ": " + e.what());
  }
  sort_spans(spans);

  std::vector<RankedBinding> ranked;
  std::unordered_set<std::string> seen_keys;
  std::set<Term> seen_terms;
  for (AnswerSpan& span : spans) {
    if (!seen_keys.insert(answer_key(span.text)).second) continue;
    if (span.score < config_.score_cutoff) continue;
    Term term = lexicon_.iri_of(span.text);
    // A literal cannot stand in subject position.
    if (setting == Setting::kPO && !term.is_iri()) continue;
    if (!seen_terms.insert(term).second) continue;
    RankedBinding rb;
    rb.binding.bind(var_term.value(), std::move(term));
    rb.score = span.score;
    rb.evidence = std::move(span);
    ranked.push_back(std::move(rb));
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedBinding& a, const RankedBinding& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.binding < b.binding;
  });

  if (shape == PatternShape::kFullyBound) {
    for (auto& rb : ranked) {
      if (*rb.binding.get(var_term.value()) == tp.o) {
        result.bindings.push_back({Binding{}, rb.score, std::move(rb.evidence)});
        break;
      }
    }
  } else {
    result.bindings = std::move(ranked);
  }
  result.estimated_total = result.bindings.size();
  return result;
}

}  // namespace kgtext
