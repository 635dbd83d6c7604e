#include <algorithm>
#include <set>

#include "kgtext/extractors/extractor.hpp"
#include "kgtext/util/text.hpp"

namespace kgtext {

namespace {

struct Token {
  std::size_t start;
  std::size_t end;
  std::string lower;
  bool np;  // capitalized word or number
};

bool is_word_byte(char c) { return text::is_ascii_alnum(c) || static_cast<unsigned char>(c) >= 0x80; }

std::vector<Token> tokens_of(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_byte(s[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && is_word_byte(s[i])) ++i;
    const std::string_view w = s.substr(start, i - start);
    const bool capitalized = w.front() >= 'A' && w.front() <= 'Z';
    const bool number = std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
    out.push_back({start, i, text::ascii_lower(w), capitalized || number});
  }
  return out;
}

// Two noun-phrase tokens join only across whitespace and hyphens.
bool joinable_gap(std::string_view gap) {
  return std::all_of(gap.begin(), gap.end(),
                     [](char c) { return text::is_ascii_space(c) || c == '-'; });
}

std::optional<std::size_t> find_mention(const std::vector<Token>& toks,
                                        const std::vector<std::string>& label) {
  if (label.empty() || label.size() > toks.size()) return std::nullopt;
  for (std::size_t i = 0; i + label.size() <= toks.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < label.size() && ok; ++k) ok = toks[i + k].lower == label[k];
    if (ok) return i;
  }
  return std::nullopt;
}

}  // namespace

std::vector<AnswerSpan> extract_baseline(const ExtractionRequest& req,
                                         std::string_view predicate_label,
                                         std::string_view question) {
  const auto label = text::word_tokens(predicate_label);
  if (label.empty()) throw std::invalid_argument("baseline: empty predicate label");
  const auto q_tokens = text::word_tokens(question);
  const std::set<std::string> question_words(q_tokens.begin(), q_tokens.end());

  std::vector<AnswerSpan> spans;
  for (const RequestDocument& doc : req.documents) {
    const auto toks = tokens_of(doc.text);
    const auto mention = find_mention(toks, label);
    if (!mention) continue;
    const std::size_t m_first = *mention;
    const std::size_t m_last = *mention + label.size() - 1;

    std::size_t i = 0;
    while (i < toks.size()) {
      if (!toks[i].np || (i >= m_first && i <= m_last)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < toks.size() && toks[j + 1].np && !(j + 1 >= m_first && j + 1 <= m_last) &&
             joinable_gap(std::string_view(doc.text).substr(toks[j].end,
                                                           toks[j + 1].start - toks[j].end))) {
        ++j;
      }
      const bool restates_question = std::all_of(
          toks.begin() + static_cast<std::ptrdiff_t>(i), toks.begin() + static_cast<std::ptrdiff_t>(j + 1),
          [&](const Token& t) { return question_words.contains(t.lower); });
      if (!restates_question) {
        const std::size_t d = j < m_first ? m_first - j : i - m_last;
        AnswerSpan span;
        span.doc_iri = doc.iri;
        span.start = toks[i].start;
        span.end = toks[j].end;
        span.text = doc.text.substr(span.start, span.end - span.start);
        span.score = 1.0 / (1.0 + static_cast<double>(d));
        spans.push_back(std::move(span));
      }
      i = j + 1;
    }
  }
  sort_spans(spans);
  if (spans.size() > req.max_answers) spans.resize(req.max_answers);
  return spans;
}

std::vector<AnswerSpan> BaselineExtractor::extract(const ExtractionRequest& req,
                                                   const SlotQuery& query) const {
  return extract_baseline(req, query.predicate_label, req.question);
}

}  // namespace kgtext
