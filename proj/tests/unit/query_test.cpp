#include <gtest/gtest.h>

#include <random>

#include "kgtext/sparql/query.hpp"

namespace kgtext::sparql {
namespace {

TEST(ParseSelect, SinglePattern) {
  const auto q = parse_select("SELECT ?x WHERE { <http://x/a> <http://x/p> ?x . }");
  ASSERT_EQ(q.bgp.size(), 1u);
  EXPECT_EQ(q.projection, std::vector<std::string>{"x"});
  EXPECT_EQ(q.bgp[0], TriplePattern(Term::iri("http://x/a"), Term::iri("http://x/p"), Term::variable("x")));
  EXPECT_FALSE(q.select_all);
}

TEST(ParseSelect, UndeclaredPrefix) {
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ex:a ex:p ?x }"), ResolutionError);
}

TEST(ParseSelect, SharedVariableJoin) {
  const auto q = parse_select(R"(
      PREFIX ex: <http://example.org/>
      select ?x ?y where {
        ex:a ex:p ?x .
        ?x ex:q ?y
      })");
  ASSERT_EQ(q.bgp.size(), 2u);
  EXPECT_EQ(q.bgp[0].o, Term::variable("x"));
  EXPECT_EQ(q.bgp[1].s, Term::variable("x"));
  EXPECT_EQ(q.bgp[1].p, Term::iri("http://example.org/q"));
  EXPECT_EQ(q.prefixes.at("ex"), "http://example.org/");
}

TEST(ParseSelect, StarLiteralsAndComments) {
  const auto q = parse_select(
      "# leading comment\n"
      "SELECT DISTINCT * { ?s <http://x/p> \"Amsterdam\"@en . # trailing\n"
      "  $s <http://x/q> 'it\\'s'^^<http://x/dt> . ?o <http://x/r> ?s . }");
  EXPECT_TRUE(q.select_all);
  EXPECT_EQ(q.projection, (std::vector<std::string>{"s", "o"}));
  EXPECT_EQ(q.bgp[0].o, Term::literal("Amsterdam"));
  EXPECT_EQ(q.bgp[1].o, Term::literal("it's"));
}

TEST(ParseSelect, ErrorsCarryLocation) {
  try {
    parse_select("SELECT ?x WHERE {\n  ?x <http://x/p> ?y .\n  FILTER(?y) }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ?x <http://x/p> ?y } LIMIT 1"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { OPTIONAL { ?x <http://x/p> ?y } }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ?x a <http://x/C> }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?z WHERE { ?x <http://x/p> ?y }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { }"), ParseError);
  EXPECT_THROW(parse_select("SELECT WHERE { ?x <http://x/p> ?y }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { \"l\" <http://x/p> ?x }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ?x \"l\" ?x }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ?x <http://x/p> \"open }"), ParseError);
  EXPECT_THROW(parse_select("SELECT ?x WHERE { ?x <http://x/p> ?y "), ParseError);
  EXPECT_THROW(parse_select("ASK { ?x <http://x/p> ?y }"), ParseError);
}

TEST(ParseSelect, FuzzNeverCrashes) {
  const std::string base = "PREFIX ex: <http://e/> SELECT ?x ?y WHERE { ex:a ex:p ?x . ?x ex:q \"v\" . ?x ex:r ?y }";
  std::mt19937_64 rng(9);
  for (int i = 0; i < 3000; ++i) {
    std::string s = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s.erase(pos, 1); break;
        case 1: s.insert(pos, 1, "{}.?<>\":#x \n"[rng() % 12]); break;
        default: s[pos] = static_cast<char>(32 + rng() % 95);
      }
    }
    try {
      const auto q = parse_select(s);
      EXPECT_FALSE(q.bgp.empty());
    } catch (const ParseError&) {
    } catch (const TermError&) {
      ADD_FAILURE() << "TermError escaped for: " << s;
    }
  }
}

}  // namespace
}  // namespace kgtext::sparql
