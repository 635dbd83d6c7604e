#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgtext/kg/term.hpp"

namespace kgtext {

inline constexpr std::string_view kWikidataInstanceOf = "http://www.wikidata.org/prop/direct/P31";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";

/// Which predicates carry entity types and human-readable labels.
struct StoreSchema {
  std::string type_predicate{kWikidataInstanceOf};
  std::string label_predicate{kRdfsLabel};
};

/// Immutable, indexed set of triples.
///
/// Triples are kept sorted lexicographically by (s, p, o) and deduplicated;
/// every index holds positions into that sorted array, so each index entry
/// corresponds to exactly one stored triple and index results come back in
/// (s, p, o) order. Safe for any number of concurrent readers.
class TripleStore {
 public:
  TripleStore() = default;
  TripleStore(std::vector<Triple> triples, StoreSchema schema = {});

  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const;
  const StoreSchema& schema() const { return schema_; }

  /// Distinct predicates, sorted.
  std::vector<Term> predicates() const;

  /// Triples with predicate `p`, in (s, p, o) order.
  std::vector<const Triple*> with_predicate(const Term& p) const;

  /// Set of type IRIs of `entity` (objects of its type-predicate triples).
  const std::set<Term>& types_of(const Term& entity) const;

  /// Number of triples in which `t` occurs in any position.
  std::size_t frequency(const Term& t) const;

  /// Positions (into triples()) of candidates for `tp`, chosen from the most
  /// selective index for the bound components. Candidates are not filtered.
  std::span<const std::size_t> candidates(const TriplePattern& tp) const;

  friend bool operator==(const TripleStore& a, const TripleStore& b) {
    return a.triples_ == b.triples_;
  }

 private:
  using Index = std::unordered_map<Term, std::vector<std::size_t>, TermHash>;
  struct PairHash {
    std::size_t operator()(const std::pair<Term, Term>& k) const noexcept {
      return TermHash{}(k.first) * 31 + TermHash{}(k.second);
    }
  };
  using PairIndex = std::unordered_map<std::pair<Term, Term>, std::vector<std::size_t>, PairHash>;

  std::vector<Triple> triples_;
  StoreSchema schema_;
  std::vector<std::size_t> all_;
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
  PairIndex by_predicate_subject_;
  PairIndex by_predicate_object_;
  std::unordered_map<Term, std::set<Term>, TermHash> types_;
  std::unordered_map<Term, std::size_t, TermHash> frequency_;
};

/// [tp]_store: every binding u, with domain the variables of tp, such that
/// u[tp] is a stored triple. Sorted and duplicate-free. A fully bound pattern
/// yields one empty binding if present, else nothing.
std::vector<Binding> match_pattern(const TripleStore& store, const TriplePattern& tp);

/// type(e): the (possibly empty) set of types of `entity`.
std::set<Term> entity_types(const TripleStore& store, const Term& entity);

}  // namespace kgtext
