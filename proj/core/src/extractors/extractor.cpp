#include <algorithm>
#include <tuple>

#include "kgtext/corpus/anchor.hpp"
#include "kgtext/extractors/extractor.hpp"

namespace kgtext {

void ExtractionRequest::validate() const {
  if (max_answers < 1) throw std::invalid_argument("max_answers must be >= 1");
  if (documents.empty()) throw std::invalid_argument("extraction request has no documents");
}

bool span_before(const AnswerSpan& a, const AnswerSpan& b) {
  if (a.score != b.score) return a.score > b.score;
  return std::tie(a.doc_iri, a.start, a.end, a.text) < std::tie(b.doc_iri, b.start, b.end, b.text);
}

void sort_spans(std::vector<AnswerSpan>& spans) { std::sort(spans.begin(), spans.end(), span_before); }

bool spans_valid(const ExtractionRequest& req, const std::vector<AnswerSpan>& spans) {
  for (const AnswerSpan& s : spans) {
    auto doc = std::find_if(req.documents.begin(), req.documents.end(),
                            [&](const RequestDocument& d) { return d.iri == s.doc_iri; });
    if (doc == req.documents.end()) return false;
    if (s.start >= s.end || s.end > doc->text.size()) return false;
    if (doc->text.compare(s.start, s.end - s.start, s.text) != 0) return false;
    if (!(s.score >= 0.0 && s.score <= 1.0)) return false;
  }
  return true;
}

std::vector<AnswerSpan> extract_gold(const ExtractionRequest& req, const TripleStore& store,
                                     const Lexicon& lexicon, const TriplePattern& pattern) {
  const auto vars = pattern.variables();
  if (vars.size() != 1 || pattern.p.is_variable()) {
    throw std::invalid_argument("gold extractor needs an SP or PO pattern: " + pattern.to_string());
  }
  const std::string& var = vars.front();
  std::vector<AnswerSpan> spans;
  for (const Binding& u : match_pattern(store, pattern)) {
    const Term answer = *u.get(var);
    std::optional<std::string> surface;
    if (answer.is_literal()) surface = answer.value();
    else surface = lexicon.label_of(answer.value());
    if (!surface || surface->empty()) continue;
    for (const RequestDocument& doc : req.documents) {
      if (auto a = find_anchor(doc.text, *surface)) {
        spans.push_back({doc.iri, a->start, a->end, std::string(a->slice(doc.text)), 1.0});
      }
    }
  }
  sort_spans(spans);
  if (spans.size() > req.max_answers) spans.resize(req.max_answers);
  return spans;
}

std::vector<AnswerSpan> GoldExtractor::extract(const ExtractionRequest& req,
                                               const SlotQuery& query) const {
  return extract_gold(req, store_, lexicon_, query.pattern);
}

}  // namespace kgtext
