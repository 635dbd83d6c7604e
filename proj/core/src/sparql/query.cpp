#include "kgtext/sparql/query.hpp"

#include <algorithm>
#include <optional>

#include "kgtext/util/text.hpp"

namespace kgtext::sparql {

namespace {

enum class Tok { kIri, kPrefixedName, kVar, kString, kLangTag, kDatatype, kLBrace, kRBrace, kDot, kStar, kWord, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= s_.size()) {
        out.push_back({Tok::kEnd, "", line, col});
        return out;
      }
      const char c = s_[pos_];
      auto single = [&](Tok k) {
        advance();
        out.push_back({k, std::string(1, c), line, col});
      };
      if (c == '{') single(Tok::kLBrace);
      else if (c == '}') single(Tok::kRBrace);
      else if (c == '.') single(Tok::kDot);
      else if (c == '*') single(Tok::kStar);
      else if (c == '<') out.push_back({Tok::kIri, iri(line, col), line, col});
      else if (c == '?' || c == '$') out.push_back({Tok::kVar, var(line, col), line, col});
      else if (c == '"' || c == '\'') out.push_back({Tok::kString, string(line, col), line, col});
      else if (c == '@') out.push_back({Tok::kLangTag, langtag(line, col), line, col});
      else if (c == '^' && s_.substr(pos_, 2) == "^^") {
        advance();
        advance();
        out.push_back({Tok::kDatatype, "^^", line, col});
      } else if (text::is_ascii_alnum(c) || c == '_' || c == ':') {
        std::string word = name();
        const Tok k = word.find(':') != std::string::npos ? Tok::kPrefixedName : Tok::kWord;
        out.push_back({k, std::move(word), line, col});
      } else {
        // Left to the parser so that a keyword before it is reported first.
        advance();
        out.push_back({Tok::kWord, std::string(1, c), line, col});
      }
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      if (text::is_ascii_space(s_[pos_])) {
        advance();
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string iri(std::size_t line, std::size_t col) {
    advance();
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '>') {
      if (text::is_ascii_space(s_[pos_])) throw ParseError("whitespace in IRI", line_, col_);
      out.push_back(s_[pos_]);
      advance();
    }
    if (pos_ >= s_.size()) throw ParseError("unterminated IRI", line, col);
    advance();
    if (out.empty()) throw ParseError("empty IRI", line, col);
    return out;
  }

  std::string var(std::size_t line, std::size_t col) {
    advance();
    std::string out;
    while (pos_ < s_.size() && (text::is_ascii_alnum(s_[pos_]) || s_[pos_] == '_')) {
      out.push_back(s_[pos_]);
      advance();
    }
    if (!is_valid_variable_name(out)) throw ParseError("invalid variable name", line, col);
    return out;
  }

  std::string string(std::size_t line, std::size_t col) {
    const char quote = s_[pos_];
    advance();
    std::string out;
    while (true) {
      if (pos_ >= s_.size() || s_[pos_] == '\n') throw ParseError("unterminated string", line, col);
      const char c = s_[pos_];
      advance();
      if (c == quote) return out;
      if (c == '\\') {
        if (pos_ >= s_.size()) throw ParseError("unterminated escape", line, col);
        const char e = s_[pos_];
        advance();
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          case '"': case '\'': case '\\': out.push_back(e); break;
          default: throw ParseError(std::string("bad escape \\") + e, line_, col_);
        }
        continue;
      }
      out.push_back(c);
    }
  }

  std::string langtag(std::size_t line, std::size_t col) {
    advance();
    std::string out;
    while (pos_ < s_.size() && (text::is_ascii_alnum(s_[pos_]) || s_[pos_] == '-')) {
      out.push_back(s_[pos_]);
      advance();
    }
    if (out.empty()) throw ParseError("empty language tag", line, col);
    return out;
  }

  std::string name() {
    std::string out;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (text::is_ascii_alnum(c) || c == '_' || c == ':' || c == '-' ||
          static_cast<unsigned char>(c) >= 0x80) {
        out.push_back(c);
        advance();
      } else if (c == '.' && pos_ + 1 < s_.size() &&
                 (text::is_ascii_alnum(s_[pos_ + 1]) || s_[pos_ + 1] == '_')) {
        // Dots are allowed inside local names but not at the end.
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SelectQuery run() {
    SelectQuery q;
    while (keyword("PREFIX")) {
      const Token& name = next();
      if (name.kind != Tok::kPrefixedName || name.text.back() != ':' ||
          std::count(name.text.begin(), name.text.end(), ':') != 1) {
        fail("expected prefix name like 'ex:'", name);
      }
      const Token& iri = next();
      if (iri.kind != Tok::kIri) fail("expected <IRI> after prefix name", iri);
      q.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
    }
    if (!keyword("SELECT")) fail("expected SELECT", peek());
    keyword("DISTINCT");

    std::vector<const Token*> projected;
    if (peek().kind == Tok::kStar) {
      next();
      q.select_all = true;
    } else {
      while (peek().kind == Tok::kVar) projected.push_back(&next());
      if (projected.empty()) fail("expected variables or '*' after SELECT", peek());
    }
    keyword("WHERE");
    if (next().kind != Tok::kLBrace) fail("expected '{'", toks_[pos_ - 1]);

    while (peek().kind != Tok::kRBrace) {
      if (peek().kind == Tok::kEnd) fail("expected '}'", peek());
      const Token& at = peek();
      Term s = term(q);
      Term p = term(q);
      Term o = term(q);
      if (s.is_literal()) fail("literal in subject position", at);
      if (p.is_literal()) fail("literal in predicate position", at);
      q.bgp.emplace_back(std::move(s), std::move(p), std::move(o));
      if (peek().kind == Tok::kDot) {
        next();
      } else if (peek().kind != Tok::kRBrace) {
        fail("expected '.' or '}'", peek());
      }
    }
    next();  // '}'
    if (peek().kind != Tok::kEnd) fail("unexpected content after '}'", peek());
    if (q.bgp.empty()) fail("empty WHERE clause", toks_[pos_ - 1]);

    std::vector<std::string> bgp_vars;
    for (const auto& tp : q.bgp) {
      for (auto& v : tp.variables()) {
        if (std::find(bgp_vars.begin(), bgp_vars.end(), v) == bgp_vars.end()) bgp_vars.push_back(v);
      }
    }
    if (q.select_all) {
      q.projection = bgp_vars;
    } else {
      for (const Token* v : projected) {
        if (std::find(bgp_vars.begin(), bgp_vars.end(), v->text) == bgp_vars.end()) {
          fail("projected variable ?" + v->text + " does not occur in WHERE", *v);
        }
        if (std::find(q.projection.begin(), q.projection.end(), v->text) == q.projection.end()) {
          q.projection.push_back(v->text);
        }
      }
    }
    return q;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }

  bool keyword(std::string_view kw) {
    const Token& t = peek();
    if (t.kind == Tok::kWord && text::ascii_lower(t.text) == text::ascii_lower(kw)) {
      next();
      return true;
    }
    return false;
  }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

  Term term(const SelectQuery& q) {
    const Token& t = next();
    switch (t.kind) {
      case Tok::kIri: return Term::iri(t.text);
      case Tok::kVar: return Term::variable(t.text);
      case Tok::kPrefixedName: {
        const auto colon = t.text.find(':');
        const std::string prefix = t.text.substr(0, colon);
        auto it = q.prefixes.find(prefix);
        if (it == q.prefixes.end()) {
          throw ResolutionError("undeclared prefix '" + prefix + ":'", t.line, t.column);
        }
        return Term::iri(it->second + t.text.substr(colon + 1));
      }
      case Tok::kString: {
        Term lit = Term::literal(t.text);
        if (peek().kind == Tok::kLangTag) {
          next();
        } else if (peek().kind == Tok::kDatatype) {
          next();
          const Token& dt = next();
          if (dt.kind != Tok::kIri && dt.kind != Tok::kPrefixedName) fail("expected datatype IRI", dt);
        }
        return lit;
      }
      case Tok::kWord:
        fail("unsupported keyword or term '" + t.text + "'", t);
      default:
        fail("expected a term", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SelectQuery parse_select(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace kgtext::sparql
