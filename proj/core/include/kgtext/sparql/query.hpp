#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/kg/term.hpp"

namespace kgtext::sparql {

/// Syntax error with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A prefixed name uses an undeclared prefix.
class ResolutionError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct SelectQuery {
  std::map<std::string, std::string> prefixes;
  bool select_all = false;
  /// Projected variables in query order; for SELECT * every BGP variable in
  /// order of first appearance.
  std::vector<std::string> projection;
  std::vector<TriplePattern> bgp;
};

/// Parses the SELECT / basic-graph-pattern subset:
///
///   PREFIX ex: <http://example.org/>
///   SELECT ?x ?y WHERE { ?x ex:p ?y . ?y <http://x/q> "lit" . }
///
/// Keywords are case-insensitive; '#' starts a comment. Literal language
/// tags and datatypes are accepted and dropped. FILTER, OPTIONAL, UNION and
/// anything else outside this subset is a ParseError.
SelectQuery parse_select(std::string_view text);

}  // namespace kgtext::sparql
