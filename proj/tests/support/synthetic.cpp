#include "synthetic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgtext::fixture {

Term ex(const std::string& local) { return Term::iri(std::string(kEx) + local); }
Term lit(const std::string& value) { return Term::literal(value); }

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

const Term& type_predicate() {
  static const Term t = Term::iri(std::string(kWikidataInstanceOf));
  return t;
}

const Term& label_predicate() {
  static const Term t = Term::iri(std::string(kRdfsLabel));
  return t;
}

std::string letters(std::size_t i) {
  std::string s;
  do {
    s.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return s;
}

}  // namespace

std::string entity_label(std::size_t i) { return "Ent" + letters(i); }

std::vector<Triple> random_triples(Rng& rng, const RandomStoreOptions& opt) {
  std::vector<Triple> out;
  for (std::size_t e = 0; e < opt.entities; ++e) {
    const std::size_t ntypes = pick(rng, 0, opt.max_types_per_entity);
    for (std::size_t k = 0; k < ntypes; ++k) {
      out.emplace_back(ex("e" + std::to_string(e)), type_predicate(),
                       ex("T" + std::to_string(pick(rng, 0, opt.types - 1))));
    }
  }
  while (out.size() < opt.triples) {
    const Term s = ex("e" + std::to_string(pick(rng, 0, opt.entities - 1)));
    const Term p = ex("p" + std::to_string(pick(rng, 0, opt.predicates - 1)));
    const Term o = coin(rng, opt.literal_fraction)
                       ? lit("v" + std::to_string(pick(rng, 0, 9)))
                       : ex("e" + std::to_string(pick(rng, 0, opt.entities - 1)));
    out.emplace_back(s, p, o);
  }
  return out;
}

TriplePattern random_pattern(Rng& rng, const std::vector<Triple>& pool) {
  const Triple& t = pool[pick(rng, 0, pool.size() - 1)];
  static const char* kVars[] = {"x", "y", "z"};
  auto var = [&] { return Term::variable(kVars[pick(rng, 0, 2)]); };
  auto slot = [&](const Term& bound, bool can_miss) {
    const std::size_t r = pick(rng, 0, 9);
    if (r < 4) return var();
    if (can_miss && r == 9) return ex("missing" + std::to_string(pick(rng, 0, 3)));
    return bound;
  };
  Term s = slot(t.s, true);
  Term p = slot(t.p, true);
  Term o = pick(rng, 0, 9) < 4 ? var() : (coin(rng, 0.1) ? lit("absent") : t.o);
  return TriplePattern(std::move(s), std::move(p), std::move(o));
}

World random_datagen_world(Rng& rng, bool with_gaps) {
  const std::size_t n_entities = pick(rng, 10, 50);
  const std::size_t n_types = pick(rng, 1, 5);
  const std::size_t n_preds = pick(rng, 1, 4);
  std::vector<Triple> triples;

  std::vector<std::string> label(n_entities);
  for (std::size_t e = 0; e < n_entities; ++e) {
    const Term ent = ex("e" + std::to_string(e));
    const std::size_t ntypes = pick(rng, with_gaps ? 0 : 1, std::min<std::size_t>(n_types, 5));
    for (std::size_t k = 0; k < ntypes; ++k) {
      triples.emplace_back(ent, type_predicate(), ex("T" + std::to_string(pick(rng, 0, n_types - 1))));
    }
    if (!with_gaps || coin(rng, 0.9)) {
      label[e] = entity_label(e);
      triples.emplace_back(ent, label_predicate(), lit(label[e]));
    }
  }
  for (std::size_t p = 0; p < n_preds; ++p) {
    if (!with_gaps || coin(rng, 0.9)) {
      triples.emplace_back(ex("p" + std::to_string(p)), label_predicate(), lit("rel" + letters(p)));
    }
  }

  const std::size_t n_facts = pick(rng, 5, std::min<std::size_t>(600, 1000 - triples.size()));
  std::map<std::size_t, std::vector<std::size_t>> objects_of;
  for (std::size_t i = 0; i < n_facts; ++i) {
    const std::size_t s = pick(rng, 0, n_entities - 1);
    const std::size_t o = pick(rng, 0, n_entities - 1);
    triples.emplace_back(ex("e" + std::to_string(s)), ex("p" + std::to_string(pick(rng, 0, n_preds - 1))),
                         ex("e" + std::to_string(o)));
    objects_of[s].push_back(o);
  }

  std::vector<Document> docs;
  for (std::size_t e = 0; e < n_entities; ++e) {
    if (with_gaps && coin(rng, 0.15)) continue;
    std::string text = (label[e].empty() ? "Someone" : label[e]) + " is described here.";
    std::set<std::size_t> named(objects_of[e].begin(), objects_of[e].end());
    for (std::size_t o : named) {
      if (label[o].empty()) continue;
      const std::size_t r = pick(rng, 0, 9);
      if (with_gaps && r == 0) continue;  // answer absent
      std::string form = label[o];
      if (with_gaps && r == 1) std::transform(form.begin(), form.end(), form.begin(), ::tolower);
      text += " It relates to " + form + " in some way.";
    }
    docs.push_back({ex("e" + std::to_string(e)).value(), label[e], std::move(text)});
  }

  World w;
  w.store = TripleStore(std::move(triples));
  w.corpus = Corpus(std::move(docs));
  w.lexicon = Lexicon::from_store(w.store);
  return w;
}

World gold_world(Rng& rng, const GoldWorldOptions& opt) {
  std::vector<Triple> triples;
  std::vector<std::string> plabel(opt.predicates);
  for (std::size_t p = 0; p < opt.predicates; ++p) {
    plabel[p] = "rel" + letters(p);
    triples.emplace_back(ex("p" + std::to_string(p)), label_predicate(), lit(plabel[p]));
  }
  for (std::size_t e = 0; e < opt.entities; ++e) {
    triples.emplace_back(ex("e" + std::to_string(e)), label_predicate(), lit(entity_label(e)));
  }

  std::map<std::size_t, std::vector<std::pair<std::size_t, std::string>>> facts;
  std::size_t n_lit = 0;
  for (std::size_t i = 0; i < opt.triples; ++i) {
    const std::size_t s = pick(rng, 0, opt.entities - 1);
    const std::size_t p = pick(rng, 0, opt.predicates - 1);
    Term o = coin(rng, opt.literal_fraction) ? lit("Val" + letters(n_lit++))
                                             : ex("e" + std::to_string(pick(rng, 0, opt.entities - 1)));
    const std::string surface =
        o.is_literal() ? o.value() : entity_label(std::stoul(o.value().substr(std::string(kEx).size() + 1)));
    triples.emplace_back(ex("e" + std::to_string(s)), ex("p" + std::to_string(p)), o);
    facts[s].emplace_back(p, surface);
  }

  std::vector<Document> docs;
  for (std::size_t e = 0; e < opt.entities; ++e) {
    std::string text = entity_label(e) + " is an entity.";
    for (const auto& [p, surface] : facts[e]) text += " Its " + plabel[p] + " is " + surface + ".";
    docs.push_back({ex("e" + std::to_string(e)).value(), entity_label(e), std::move(text)});
  }

  World w;
  w.store = TripleStore(std::move(triples));
  w.corpus = Corpus(std::move(docs));
  w.lexicon = Lexicon::from_store(w.store);
  return w;
}

World capital_world(std::size_t n) {
  const Term type = Term::iri(std::string(kWikidataInstanceOf));
  const Term label = label_predicate();
  std::vector<Triple> t{{ex("capital"), label, lit("capital")}};
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    const Term c = ex("c" + std::to_string(i));
    const Term k = ex("k" + std::to_string(i));
    const std::string cl = "Land" + entity_label(i);
    const std::string kl = "Town" + entity_label(i);
    t.emplace_back(c, type, ex("Country"));
    t.emplace_back(k, type, ex("City"));
    t.emplace_back(c, label, lit(cl));
    t.emplace_back(k, label, lit(kl));
    t.emplace_back(c, ex("capital"), k);
    docs.push_back({c.value(), cl, cl + "'s capital is " + kl + "."});
  }
  World w;
  w.store = TripleStore(std::move(t));
  w.corpus = Corpus(std::move(docs));
  w.lexicon = Lexicon::from_store(w.store);
  return w;
}

const Triple& random_fact(Rng& rng, const TripleStore& store) {
  while (true) {
    const Triple& t = store.triples()[pick(rng, 0, store.size() - 1)];
    if (t.p.value() != kRdfsLabel) return t;
  }
}

namespace {

Term random_predicate(Rng& rng, const TripleStore& store) {
  return random_fact(rng, store).p;
}

}  // namespace

// A 2-3 pattern BGP in which every pattern becomes SP, PO or fully bound
// once the patterns before it in some order are bound.
sparql::SelectQuery random_bgp(Rng& rng, const TripleStore& store) {
  const Term x = Term::variable("x");
  const Term y = Term::variable("y");
  const Term z = Term::variable("z");
  const Triple& t = random_fact(rng, store);
  const Triple& u = random_fact(rng, store);
  sparql::SelectQuery q;
  switch (pick(rng, 0, 4)) {
    case 0:  // chain from a bound subject
      q.bgp = {{t.s, t.p, x}, {x, random_predicate(rng, store), y}};
      break;
    case 1:  // two facts about the same subject
      q.bgp = {{x, t.p, t.o}, {x, random_predicate(rng, store), y}};
      break;
    case 2:  // both ends bound
      q.bgp = {{x, t.p, t.o}, {x, u.p, u.o}};
      break;
    case 3:  // three-pattern chain
      q.bgp = {{t.s, t.p, x}, {x, random_predicate(rng, store), y}, {y, random_predicate(rng, store), z}};
      break;
    default:  // star around ?x
      q.bgp = {{x, t.p, t.o}, {x, random_predicate(rng, store), y}, {z, u.p, x}};
      break;
  }
  std::vector<std::string> vars;
  for (const auto& tp : q.bgp) {
    for (const auto& v : tp.variables()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  if (coin(rng, 0.5)) {
    q.select_all = true;
    q.projection = vars;
  } else {
    q.projection = {vars[pick(rng, 0, vars.size() - 1)]};
  }
  return q;
}

}  // namespace kgtext::fixture
