#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/executor/executor.hpp"

namespace kgtext {

/// Machine-readable error codes of the fragment interface.
namespace error_code {
inline constexpr std::string_view kBadPattern = "BAD_PATTERN";
inline constexpr std::string_view kUnsupportedPattern = "UNSUPPORTED_PATTERN";
inline constexpr std::string_view kUpstreamExtractorError = "UPSTREAM_EXTRACTOR_ERROR";
inline constexpr std::string_view kNotFound = "NOT_FOUND";
}  // namespace error_code

class ServiceError : public std::runtime_error {
 public:
  ServiceError(std::string_view code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  const std::string& code() const { return code_; }
  /// HTTP status for the code.
  int http_status() const;

 private:
  std::string code_;
};

struct ScoredTriple {
  Triple triple;
  double score = 0.0;

  friend bool operator==(const ScoredTriple&, const ScoredTriple&) = default;
};

/// One page of a triple pattern fragment.
///
/// Mapping onto TPF concepts: `matches` are the data triples,
/// `estimated_total` the count metadata, `next_page` the hypermedia next
/// link. Per-triple scores are an extension and are flagged as such in the
/// JSON envelope.
struct FragmentPage {
  TriplePattern pattern;
  std::vector<ScoredTriple> matches;
  std::size_t estimated_total = 0;
  std::size_t page = 1;
  std::size_t page_size = 100;
  std::optional<std::string> next_page;

  friend bool operator==(const FragmentPage&, const FragmentPage&) = default;
};

/// Query-parameter form of a term: "_" (or absent) for a variable, a quoted
/// string for a literal, otherwise an IRI (angle brackets optional).
std::string encode_term_param(const Term& t);

/// Builds the pattern from raw s/p/o parameters; variables are named s, p
/// and o. Throws ServiceError(BAD_PATTERN).
TriplePattern parse_pattern_params(const std::optional<std::string>& s,
                                   const std::optional<std::string>& p,
                                   const std::optional<std::string>& o);

/// Relative URL of a fragment page, e.g. "/fragment?s=...&p=...&o=_&page=2".
std::string fragment_url(const TriplePattern& tp, std::size_t page);

std::string to_json(const FragmentPage& page);
/// Throws ProtocolError on malformed input.
FragmentPage fragment_page_from_json(std::string_view body);

/// u[tp] for every binding, in result order; repeated triples keep their
/// first (highest) score.
std::vector<ScoredTriple> materialize(const TriplePattern& tp, const QueryResult& result);

/// Slice `all` into page `page` (1-based). next_page is set iff
/// page * page_size < all.size().
FragmentPage paginate(const TriplePattern& tp, const std::vector<ScoredTriple>& all,
                      std::size_t page, std::size_t page_size);

/// Serves fragments from a QA executor. Stateless apart from read-only
/// backing data; safe for concurrent use.
class FragmentService {
 public:
  FragmentService(const QaExecutor& executor, std::size_t page_size = 100);

  /// Throws ServiceError with one of the error codes above.
  FragmentPage fragment(const TriplePattern& tp, std::size_t page) const;

  /// Raw query parameters in, (HTTP status, JSON body) out.
  std::pair<int, std::string> handle(const std::map<std::string, std::string>& params) const;

  std::size_t page_size() const { return page_size_; }

 private:
  const QaExecutor& executor_;
  std::size_t page_size_;
};

}  // namespace kgtext
