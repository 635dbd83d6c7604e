#include "kgtext/kg/term.hpp"

#include <algorithm>
#include <cctype>

namespace kgtext {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::kIri: return "iri";
    case TermKind::kLiteral: return "literal";
    case TermKind::kVariable: return "variable";
  }
  return "unknown";
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || std::isalpha(static_cast<unsigned char>(name.front())) == 0) {
    return false;
  }
  return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

Term Term::iri(std::string value) {
  if (value.empty()) throw TermError("IRI must be non-empty");
  if (has_whitespace(value)) throw TermError("IRI contains whitespace: " + value);
  return Term(TermKind::kIri, std::move(value));
}

Term Term::literal(std::string value) { return Term(TermKind::kLiteral, std::move(value)); }

Term Term::variable(std::string name) {
  if (!is_valid_variable_name(name)) throw TermError("invalid variable name: '" + name + "'");
  return Term(TermKind::kVariable, std::move(name));
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::kIri: return "<" + value_ + ">";
    case TermKind::kLiteral: return escape_literal(value_);
    case TermKind::kVariable: return "?" + value_;
  }
  return value_;
}

Triple::Triple(Term subject, Term predicate, Term object)
    : s(std::move(subject)), p(std::move(predicate)), o(std::move(object)) {
  if (!s.is_iri()) throw TermError("triple subject must be an IRI: " + s.to_string());
  if (!p.is_iri()) throw TermError("triple predicate must be an IRI: " + p.to_string());
  if (o.is_variable()) throw TermError("triple object must not be a variable");
}

std::string Triple::to_string() const {
  return s.to_string() + " " + p.to_string() + " " + o.to_string() + " .";
}

TriplePattern::TriplePattern(Term subject, Term predicate, Term object)
    : s(std::move(subject)), p(std::move(predicate)), o(std::move(object)) {
  if (s.is_literal()) throw TermError("pattern subject cannot be a literal");
  if (p.is_literal()) throw TermError("pattern predicate cannot be a literal");
}

const Term& TriplePattern::at(Position pos) const {
  switch (pos) {
    case Position::kSubject: return s;
    case Position::kPredicate: return p;
    case Position::kObject: return o;
  }
  return s;
}

std::vector<std::string> TriplePattern::variables() const {
  std::vector<std::string> out;
  for (const Term* t : {&s, &p, &o}) {
    if (t->is_variable() && std::find(out.begin(), out.end(), t->value()) == out.end()) {
      out.push_back(t->value());
    }
  }
  return out;
}

std::string TriplePattern::to_string() const {
  return s.to_string() + " " + p.to_string() + " " + o.to_string();
}

void Binding::bind(const std::string& var, Term value) {
  if (value.is_variable()) throw TermError("variable ?" + var + " cannot map to a variable");
  auto [it, inserted] = assignments_.try_emplace(var, value);
  if (!inserted && it->second != value) {
    throw TermError("conflicting binding for ?" + var);
  }
}

std::optional<Term> Binding::get(const std::string& var) const {
  auto it = assignments_.find(var);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

bool Binding::compatible_with(const Binding& other) const {
  for (const auto& [var, term] : other.assignments_) {
    auto it = assignments_.find(var);
    if (it != assignments_.end() && it->second != term) return false;
  }
  return true;
}

Binding Binding::merged(const Binding& other) const {
  Binding out = *this;
  for (const auto& [var, term] : other.assignments_) out.bind(var, term);
  return out;
}

Binding Binding::projected(const std::vector<std::string>& vars) const {
  Binding out;
  for (const auto& v : vars) {
    if (auto it = assignments_.find(v); it != assignments_.end()) {
      out.assignments_.emplace(v, it->second);
    }
  }
  return out;
}

std::string Binding::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, term] : assignments_) {
    if (!first) out += ", ";
    first = false;
    out += var + "=" + term.to_string();
  }
  return out + "}";
}

TriplePattern substitute(const TriplePattern& tp, const Binding& u) {
  auto sub = [&u](const Term& t) {
    if (!t.is_variable()) return t;
    auto v = u.get(t.value());
    return v ? *v : t;
  };
  return TriplePattern(sub(tp.s), sub(tp.p), sub(tp.o));
}

std::optional<Triple> ground(const TriplePattern& tp, const Binding& u) {
  auto sub = [&u](const Term& t) {
    if (!t.is_variable()) return t;
    auto v = u.get(t.value());
    return v ? *v : t;
  };
  Term s = sub(tp.s), p = sub(tp.p), o = sub(tp.o);
  if (!s.is_iri() || !p.is_iri() || o.is_variable()) return std::nullopt;
  return Triple(std::move(s), std::move(p), std::move(o));
}

std::optional<Binding> unify(const TriplePattern& tp, const Triple& t) {
  Binding u;
  auto step = [&u](const Term& pat, const Term& val) {
    if (!pat.is_variable()) return pat == val;
    auto prev = u.get(pat.value());
    if (prev) return *prev == val;
    u.bind(pat.value(), val);
    return true;
  };
  if (step(tp.s, t.s) && step(tp.p, t.p) && step(tp.o, t.o)) return u;
  return std::nullopt;
}

}  // namespace kgtext
