#include "kgtext/corpus/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "kgtext/corpus/corpus.hpp"
#include "kgtext/util/text.hpp"

namespace kgtext {

Lexicon::Lexicon(std::map<std::string, std::string> labels,
                 const std::unordered_map<std::string, std::size_t>& frequency) {
  for (auto& [iri, label] : labels) {
    if (label.empty()) continue;
    exact_[label].push_back(iri);
    reverse_[text::fold(label)].push_back(iri);
    labels_.emplace(iri, std::move(label));
  }
  auto freq = [&frequency](const std::string& iri) -> std::size_t {
    auto it = frequency.find(iri);
    return it == frequency.end() ? 0 : it->second;
  };
  auto order = [&freq](const std::string& a, const std::string& b) {
    const auto fa = freq(a);
    const auto fb = freq(b);
    if (fa != fb) return fa > fb;
    return a < b;
  };
  for (auto* table : {&exact_, &reverse_}) {
    for (auto& [_, iris] : *table) std::sort(iris.begin(), iris.end(), order);
  }
}

Lexicon Lexicon::from_store(const TripleStore& store) {
  std::map<std::string, std::string> labels;
  std::unordered_map<std::string, std::size_t> frequency;
  const Term label_pred = Term::iri(store.schema().label_predicate);
  // Triples are sorted, so the first literal per subject is the smallest.
  for (const Triple* t : store.with_predicate(label_pred)) {
    if (t->o.is_literal() && !t->o.value().empty()) labels.try_emplace(t->s.value(), t->o.value());
  }
  for (const auto& [iri, _] : labels) frequency[iri] = store.frequency(Term::iri(iri));
  return Lexicon(std::move(labels), frequency);
}

Lexicon Lexicon::from_tsv(std::istream& in, const TripleStore* store) {
  std::map<std::string, std::string> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw CorpusError("lexicon line " + std::to_string(lineno) + ": expected IRI<TAB>label");
    }
    labels.try_emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  std::unordered_map<std::string, std::size_t> frequency;
  if (store != nullptr) {
    for (const auto& [iri, _] : labels) {
      if (!iri.empty()) frequency[iri] = store->frequency(Term::iri(iri));
    }
  }
  return Lexicon(std::move(labels), frequency);
}

Lexicon Lexicon::from_tsv(const std::filesystem::path& path, const TripleStore* store) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open lexicon " + path.string());
  return from_tsv(in, store);
}

std::optional<std::string> Lexicon::label_of(std::string_view iri) const {
  auto it = labels_.find(std::string(iri));
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& Lexicon::exact(std::string_view label) const {
  static const std::vector<std::string> kNone;
  auto it = exact_.find(std::string(label));
  return it == exact_.end() ? kNone : it->second;
}

const std::vector<std::string>& Lexicon::folded(std::string_view label) const {
  static const std::vector<std::string> kNone;
  auto it = reverse_.find(text::fold(label));
  return it == reverse_.end() ? kNone : it->second;
}

Term Lexicon::iri_of(std::string_view answer) const {
  if (const auto& hit = exact(answer); !hit.empty()) return Term::iri(hit.front());
  if (const auto& hit = folded(answer); !hit.empty()) return Term::iri(hit.front());
  return Term::literal(std::string(answer));
}

}  // namespace kgtext
