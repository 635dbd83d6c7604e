#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "kgtext/kg/ingest.hpp"

namespace kgtext {
namespace {

IngestResult run(const std::string& text, DumpFormat f = DumpFormat::kNTriples) {
  std::istringstream in(text);
  IngestConfig cfg;
  cfg.format = f;
  return ingest(in, cfg);
}

TEST(Ingest, SingleLine) {
  const auto r = run("<http://x/a> <http://x/p> <http://x/b> .\n");
  EXPECT_EQ(r.store.size(), 1u);
  EXPECT_EQ(r.stats.skipped(), 0u);
}

TEST(Ingest, EmptyInputWarnsButSucceeds) {
  const auto r = run("");
  EXPECT_EQ(r.store.size(), 0u);
  EXPECT_EQ(r.stats.skipped(), 0u);
  EXPECT_EQ(r.stats.warnings.size(), 1u);
}

TEST(Ingest, BlankNodeLineSkipped) {
  const auto r = run(
      "<http://x/a> <http://x/p> <http://x/b> .\n"
      "_:b0 <http://x/p> <http://x/b> .\n"
      "<http://x/b> <http://x/p> \"lit\" .\n");
  EXPECT_EQ(r.store.size(), 2u);
  EXPECT_EQ(r.stats.skipped_blank_node, 1u);
  EXPECT_EQ(r.stats.skipped(), 1u);
}

TEST(Ingest, MalformedAndCommentsCounted) {
  const auto r = run(
      "# comment\n"
      "\n"
      "<http://x/a> <http://x/p> .\n"
      "\"l\" <http://x/p> <http://x/b> .\n"
      "<http://x/a> <http://x/p> <http://x/b>\n"
      "<http://x/a> <http://x/p> <http://x/b> . # trailing comment\n");
  EXPECT_EQ(r.store.size(), 1u);
  EXPECT_EQ(r.stats.skipped_malformed, 3u);
  EXPECT_EQ(r.stats.lines, 6u);
}

TEST(Ingest, LiteralTagsAndEscapesDropped) {
  const auto a = parse_ntriples_line(R"(<http://x/a> <http://x/p> "Amsterdam"@en .)");
  ASSERT_EQ(a.status, LineStatus::kTriple);
  EXPECT_EQ(a.triple->o, Term::literal("Amsterdam"));
  const auto b = parse_ntriples_line(
      R"(<http://x/a> <http://x/p> "42"^^<http://www.w3.org/2001/XMLSchema#integer> .)");
  EXPECT_EQ(b.triple->o, Term::literal("42"));
  const auto c = parse_ntriples_line(R"(<http://x/a> <http://x/p> "a\"bé\n" .)");
  EXPECT_EQ(c.triple->o, Term::literal("a\"b\xC3\xA9\n"));
}

TEST(Ingest, Idempotent) {
  const std::string dump =
      "<http://x/b> <http://x/p> <http://x/c> .\n"
      "<http://x/a> <http://x/p> <http://x/b> .\n"
      "<http://x/a> <http://x/p> <http://x/b> .\n";
  const auto r1 = run(dump);
  const auto r2 = run(dump);
  EXPECT_EQ(r1.store, r2.store);
  EXPECT_EQ(r1.store.size(), 2u);
  EXPECT_EQ(r1.stats.triples, 3u);

  std::ostringstream out;
  write_ntriples(out, r1.store);
  EXPECT_EQ(run(out.str()).store, r1.store);
}

TEST(Ingest, Tsv) {
  const auto r = run(
      "http://x/a\thttp://x/p\thttp://x/b\tiri\n"
      "<http://x/a>\t<http://x/q>\tsome text\tliteral\n"
      "_:b\thttp://x/p\thttp://x/b\tiri\n"
      "http://x/a\thttp://x/p\n"
      "http://x/a\thttp://x/p\tx\tnumber\n",
      DumpFormat::kTsv);
  EXPECT_EQ(r.store.size(), 2u);
  EXPECT_EQ(r.stats.skipped_blank_node, 1u);
  EXPECT_EQ(r.stats.skipped_malformed, 2u);
  EXPECT_TRUE(r.store.contains({Term::iri("http://x/a"), Term::iri("http://x/q"), Term::literal("some text")}));
}

TEST(Ingest, UnreadableFile) {
  EXPECT_THROW(ingest_file("/nonexistent/dump.nt", {}), IngestError);
}

}  // namespace
}  // namespace kgtext
