#include "kgtext/kg/store.hpp"

#include <algorithm>

namespace kgtext {

TripleStore::TripleStore(std::vector<Triple> triples, StoreSchema schema)
    : triples_(std::move(triples)), schema_(std::move(schema)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());

  const Term type_pred = Term::iri(schema_.type_predicate);
  all_.resize(triples_.size());
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    all_[i] = i;
    by_subject_[t.s].push_back(i);
    by_predicate_[t.p].push_back(i);
    by_object_[t.o].push_back(i);
    by_predicate_subject_[{t.p, t.s}].push_back(i);
    by_predicate_object_[{t.p, t.o}].push_back(i);
    ++frequency_[t.s];
    if (t.p != t.s) ++frequency_[t.p];
    if (t.o != t.s && t.o != t.p) ++frequency_[t.o];
    if (t.p == type_pred) types_[t.s].insert(t.o);
  }
}

bool TripleStore::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::vector<Term> TripleStore::predicates() const {
  std::vector<Term> out;
  out.reserve(by_predicate_.size());
  for (const auto& [p, _] : by_predicate_) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<const Triple*> TripleStore::with_predicate(const Term& p) const {
  std::vector<const Triple*> out;
  auto it = by_predicate_.find(p);
  if (it == by_predicate_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&triples_[i]);
  return out;
}

const std::set<Term>& TripleStore::types_of(const Term& entity) const {
  static const std::set<Term> kNone;
  auto it = types_.find(entity);
  return it == types_.end() ? kNone : it->second;
}

std::size_t TripleStore::frequency(const Term& t) const {
  auto it = frequency_.find(t);
  return it == frequency_.end() ? 0 : it->second;
}

std::span<const std::size_t> TripleStore::candidates(const TriplePattern& tp) const {
  static const std::vector<std::size_t> kEmpty;
  auto lookup = [](const auto& index, const auto& key) -> std::span<const std::size_t> {
    auto it = index.find(key);
    if (it == index.end()) return kEmpty;
    return it->second;
  };
  const bool s = !tp.s.is_variable();
  const bool p = !tp.p.is_variable();
  const bool o = !tp.o.is_variable();
  if (p && s) return lookup(by_predicate_subject_, std::pair{tp.p, tp.s});
  if (p && o) return lookup(by_predicate_object_, std::pair{tp.p, tp.o});
  if (s && o) {
    auto bs = lookup(by_subject_, tp.s);
    auto bo = lookup(by_object_, tp.o);
    return bs.size() <= bo.size() ? bs : bo;
  }
  if (s) return lookup(by_subject_, tp.s);
  if (o) return lookup(by_object_, tp.o);
  if (p) return lookup(by_predicate_, tp.p);
  return all_;
}

std::vector<Binding> match_pattern(const TripleStore& store, const TriplePattern& tp) {
  std::vector<Binding> out;
  for (std::size_t i : store.candidates(tp)) {
    if (auto u = unify(tp, store.triples()[i])) out.push_back(std::move(*u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<Term> entity_types(const TripleStore& store, const Term& entity) {
  return store.types_of(entity);
}

}  // namespace kgtext
