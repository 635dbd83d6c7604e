#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgtext {

/// Thrown when a term, triple or pattern is constructed from invalid parts.
class TermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TermKind : unsigned char { kIri, kLiteral, kVariable };

std::string_view to_string(TermKind kind);

/// An RDF term restricted to IRIs, literals (lexical form only) and query
/// variables. Blank nodes never reach this type; they are dropped at
/// ingestion.
class Term {
 public:
  Term() = default;

  /// Non-empty, no whitespace.
  static Term iri(std::string value);
  static Term literal(std::string value);
  /// `name` without the '?' sigil; must match [A-Za-z][A-Za-z0-9_]*.
  static Term variable(std::string name);

  TermKind kind() const { return kind_; }
  const std::string& value() const { return value_; }

  bool is_iri() const { return kind_ == TermKind::kIri; }
  bool is_literal() const { return kind_ == TermKind::kLiteral; }
  bool is_variable() const { return kind_ == TermKind::kVariable; }

  /// N-Triples-like rendering: <iri>, "literal", ?var.
  std::string to_string() const;

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value) : kind_(kind), value_(std::move(value)) {}

  TermKind kind_ = TermKind::kIri;
  std::string value_;
};

bool is_valid_variable_name(std::string_view name);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept {
    return std::hash<std::string>{}(t.value()) * 3 + static_cast<std::size_t>(t.kind());
  }
};

/// A ground RDF triple: IRI subject and predicate, IRI or literal object.
struct Triple {
  Term s;
  Term p;
  Term o;

  Triple() = default;
  Triple(Term subject, Term predicate, Term object);

  std::string to_string() const;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Positions of a triple or pattern.
enum class Position : unsigned char { kSubject, kPredicate, kObject };

/// (I ∪ V) × (I ∪ V) × (I ∪ L ∪ V). Any number of positions may be variables.
struct TriplePattern {
  Term s;
  Term p;
  Term o;

  TriplePattern() = default;
  TriplePattern(Term subject, Term predicate, Term object);

  const Term& at(Position pos) const;
  /// Distinct variable names in s, p, o order.
  std::vector<std::string> variables() const;
  std::size_t variable_count() const { return variables().size(); }

  std::string to_string() const;

  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

/// A partial mapping from variable names to ground terms.
class Binding {
 public:
  Binding() = default;

  /// Throws TermError if `value` is a variable or if `var` is already bound
  /// to a different term.
  void bind(const std::string& var, Term value);
  std::optional<Term> get(const std::string& var) const;
  bool contains(const std::string& var) const { return assignments_.contains(var); }
  bool empty() const { return assignments_.empty(); }
  std::size_t size() const { return assignments_.size(); }

  const std::map<std::string, Term>& assignments() const { return assignments_; }

  /// True when every shared variable maps to the same term.
  bool compatible_with(const Binding& other) const;
  /// Union of two compatible bindings.
  Binding merged(const Binding& other) const;
  /// Restriction to `vars` (missing variables are ignored).
  Binding projected(const std::vector<std::string>& vars) const;

  std::string to_string() const;

  friend auto operator<=>(const Binding&, const Binding&) = default;
  friend bool operator==(const Binding&, const Binding&) = default;

 private:
  std::map<std::string, Term> assignments_;
};

/// u[tp]: replace bound variables; unbound ones stay variables.
TriplePattern substitute(const TriplePattern& tp, const Binding& u);

/// u[tp] as a ground triple, or nullopt if some variable is unbound or the
/// result is not a valid triple (e.g. literal in subject position).
std::optional<Triple> ground(const TriplePattern& tp, const Binding& u);

/// The binding u with u[tp] == t, or nullopt if t does not match tp.
std::optional<Binding> unify(const TriplePattern& tp, const Triple& t);

}  // namespace kgtext
