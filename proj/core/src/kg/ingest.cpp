#include "kgtext/kg/ingest.hpp"

#include <fstream>
#include <ostream>

#include "kgtext/util/text.hpp"

namespace kgtext {

namespace {

struct ParseFailure {
  std::string message;
};

enum class NodeKind { kIri, kBlank, kLiteral };

struct Node {
  NodeKind kind;
  std::string value;
};

class LineParser {
 public:
  explicit LineParser(std::string_view line) : s_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseFailure{what + " at column " + std::to_string(pos_ + 1)};
  }

  Node node() {
    switch (peek()) {
      case '<': return {NodeKind::kIri, iri()};
      case '_': return {NodeKind::kBlank, blank()};
      case '"': return {NodeKind::kLiteral, literal()};
      default: fail("expected term");
    }
  }

  void expect_dot() {
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content");
  }

 private:
  char32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char c = s_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<char32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<char32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<char32_t>(c - 'A' + 10);
      else fail("bad hex digit");
    }
    if (cp > 0x10FFFF) fail("code point out of range");
    return cp;
  }

  std::string iri() {
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = s_[pos_];
      if (c == '>') {
        ++pos_;
        return out;
      }
      if (c == '\\') {
        ++pos_;
        const char e = peek();
        ++pos_;
        if (e == 'u') text::append_utf8(out, hex(4));
        else if (e == 'U') text::append_utf8(out, hex(8));
        else fail("bad IRI escape");
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("illegal character in IRI");
      }
      out.push_back(c);
      ++pos_;
    }
  }

  std::string blank() {
    if (s_.substr(pos_, 2) != "_:") fail("bad blank node");
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end() && peek() != ' ' && peek() != '\t' && peek() != '.') ++pos_;
    // A label may contain '.' but not end with it; N-Triples writers put a
    // space before the terminating dot in practice.
    if (pos_ == start) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string literal() {
    ++pos_;  // '"'
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail("unterminated escape");
      const char e = s_[pos_++];
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u': text::append_utf8(out, hex(4)); break;
        case 'U': text::append_utf8(out, hex(8)); break;
        default: fail("bad literal escape");
      }
    }
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (text::is_ascii_alnum(peek()) || peek() == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (peek() != '<') fail("expected datatype IRI");
      iri();
    }
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

ParsedLine malformed(std::string msg) {
  ParsedLine r;
  r.status = LineStatus::kMalformed;
  r.error = std::move(msg);
  return r;
}

Term to_term(const Node& n) {
  return n.kind == NodeKind::kLiteral ? Term::literal(n.value) : Term::iri(n.value);
}

std::string_view strip_angle(std::string_view s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

ParsedLine parse_ntriples_line(std::string_view line) {
  LineParser p(line);
  p.skip_ws();
  if (p.at_end() || p.peek() == '#') return {};
  try {
    const Node s = p.node();
    if (s.kind == NodeKind::kLiteral) p.fail("literal subject");
    p.skip_ws();
    const Node pr = p.node();
    if (pr.kind != NodeKind::kIri) p.fail("predicate must be an IRI");
    p.skip_ws();
    const Node o = p.node();
    p.expect_dot();
    if (s.kind == NodeKind::kBlank || o.kind == NodeKind::kBlank) {
      ParsedLine r;
      r.status = LineStatus::kBlankNode;
      return r;
    }
    ParsedLine r;
    r.status = LineStatus::kTriple;
    r.triple = Triple(to_term(s), to_term(pr), to_term(o));
    return r;
  } catch (const ParseFailure& f) {
    return malformed(f.message);
  } catch (const TermError& e) {
    return malformed(e.what());
  }
}

ParsedLine parse_tsv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty() || line.front() == '#') return {};
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (cols.size() != 4) return malformed("expected 4 tab-separated columns");
  const std::string_view s = strip_angle(cols[0]);
  const std::string_view o = cols[2];
  const std::string_view kind = cols[3];
  if (s.starts_with("_:") || (kind == "iri" && o.starts_with("_:"))) {
    ParsedLine r;
    r.status = LineStatus::kBlankNode;
    return r;
  }
  try {
    Term object;
    if (kind == "iri") object = Term::iri(std::string(strip_angle(o)));
    else if (kind == "literal") object = Term::literal(std::string(o));
    else return malformed("object_kind must be 'iri' or 'literal'");
    ParsedLine r;
    r.status = LineStatus::kTriple;
    r.triple = Triple(Term::iri(std::string(s)), Term::iri(std::string(strip_angle(cols[1]))),
                      std::move(object));
    return r;
  } catch (const TermError& e) {
    return malformed(e.what());
  }
}

IngestResult ingest(std::istream& source, const IngestConfig& config) {
  if (!source) throw IngestError("source stream is not readable");
  IngestStats stats;
  std::vector<Triple> triples;
  std::string line;
  const bool tsv = config.format == DumpFormat::kTsv;
  while (std::getline(source, line)) {
    ++stats.lines;
    ParsedLine parsed = tsv ? parse_tsv_line(line) : parse_ntriples_line(line);
    switch (parsed.status) {
      case LineStatus::kTriple:
        triples.push_back(std::move(*parsed.triple));
        ++stats.triples;
        break;
      case LineStatus::kEmpty: break;
      case LineStatus::kBlankNode: ++stats.skipped_blank_node; break;
      case LineStatus::kMalformed: ++stats.skipped_malformed; break;
    }
  }
  if (source.bad()) throw IngestError("read error after line " + std::to_string(stats.lines));
  if (triples.empty()) stats.warnings.emplace_back("no triples parsed; store is empty");
  return {TripleStore(std::move(triples), config.schema), std::move(stats)};
}

IngestResult ingest_ntriples(std::istream& source, const IngestConfig& config) {
  IngestConfig c = config;
  c.format = DumpFormat::kNTriples;
  return ingest(source, c);
}

IngestResult ingest_file(const std::filesystem::path& path, const IngestConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return ingest(in, config);
}

void write_ntriples(std::ostream& out, const TripleStore& store) {
  for (const Triple& t : store.triples()) out << t.to_string() << '\n';
}

}  // namespace kgtext
