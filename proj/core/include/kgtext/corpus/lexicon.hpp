#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgtext/kg/store.hpp"

namespace kgtext {

/// IRI ↔ label mapping.
///
/// Forward lookups return the entity's label. Reverse lookups go through two
/// tables, one keyed by the exact label and one keyed by its folded form
/// (ASCII-lowercased, whitespace collapsed); both list IRIs by descending
/// triple frequency, then IRI.
class Lexicon {
 public:
  Lexicon() = default;

  /// `labels`: IRI → label. Empty labels are ignored. `frequency` orders
  /// ambiguous reverse entries; IRIs missing from it count as 0.
  Lexicon(std::map<std::string, std::string> labels,
          const std::unordered_map<std::string, std::size_t>& frequency = {});

  /// Labels come from the store's label predicate (the lexicographically
  /// smallest literal per subject); frequencies from the store.
  static Lexicon from_store(const TripleStore& store);

  /// Two-column TSV: IRI <TAB> label. Frequencies from `store` when given.
  static Lexicon from_tsv(std::istream& in, const TripleStore* store = nullptr);
  static Lexicon from_tsv(const std::filesystem::path& path, const TripleStore* store = nullptr);

  const std::map<std::string, std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  std::optional<std::string> label_of(std::string_view iri) const;

  /// IRIs whose label is exactly `label`, in reverse-list order.
  const std::vector<std::string>& exact(std::string_view label) const;
  /// IRIs whose folded label equals fold(`label`), in reverse-list order.
  const std::vector<std::string>& folded(std::string_view label) const;

  /// Translate an extracted answer string back to a term: exact label match,
  /// then folded match, else the answer itself as a literal.
  Term iri_of(std::string_view answer) const;

 private:
  std::map<std::string, std::string> labels_;
  std::unordered_map<std::string, std::vector<std::string>> exact_;
  std::unordered_map<std::string, std::vector<std::string>> reverse_;
};

/// Free-function forms.
inline std::optional<std::string> label_of(const Lexicon& lex, std::string_view iri) {
  return lex.label_of(iri);
}
inline Term iri_of(const Lexicon& lex, std::string_view answer) { return lex.iri_of(answer); }

}  // namespace kgtext
