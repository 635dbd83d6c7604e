#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgtext/sparql/query.hpp"
#include "kgtext/tpf/fragment.hpp"

namespace kgtext::sparql {

/// The fragment endpoint could not be reached.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where the planner gets fragment pages from.
class FragmentSource {
 public:
  virtual ~FragmentSource() = default;
  /// Throws ServiceError for error responses, TransportError when
  /// unreachable, ProtocolError for malformed pages.
  virtual FragmentPage fetch(const TriplePattern& tp, std::size_t page) = 0;
};

/// Fragments over HTTP from a running TPF server.
class HttpFragmentSource final : public FragmentSource {
 public:
  /// `url` is http://host[:port][/path]; throws std::invalid_argument.
  explicit HttpFragmentSource(const std::string& url, int timeout_ms = 30000);
  ~HttpFragmentSource() override;
  FragmentPage fetch(const TriplePattern& tp, std::size_t page) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Fragments straight from an in-process service.
class LocalFragmentSource final : public FragmentSource {
 public:
  explicit LocalFragmentSource(const FragmentService& service) : service_(service) {}
  FragmentPage fetch(const TriplePattern& tp, std::size_t page) override {
    return service_.fragment(tp, page);
  }

 private:
  const FragmentService& service_;
};

struct RequestStats {
  std::size_t requests = 0;
  std::size_t pages_fetched = 0;  ///< pages beyond each pattern's first probe
  std::size_t bindings_substituted = 0;
};

struct SolutionRow {
  Binding binding;
  double score = 0.0;

  friend bool operator==(const SolutionRow&, const SolutionRow&) = default;
};

struct SolutionTable {
  std::vector<std::string> columns;
  /// Score descending, then binding; one row per distinct binding.
  std::vector<SolutionRow> rows;
  std::vector<std::string> warnings;
  RequestStats stats;
};

/// Greedy TPF evaluation of the query's basic graph pattern.
///
/// At each step page 1 of every remaining pattern (with the current binding
/// substituted) is fetched, the one with the smallest estimated_total is
/// enumerated page by page and the rest are solved recursively per match.
/// A zero count ends the branch at once. A branch where every remaining
/// pattern is unsupported is skipped with a warning. Row score is the
/// minimum over the triples that produced it; duplicates after projection
/// keep their best score.
SolutionTable plan_and_execute(const SelectQuery& q, FragmentSource& source);

/// Convenience overload over HttpFragmentSource.
SolutionTable plan_and_execute(const SelectQuery& q, const std::string& endpoint_url);

}  // namespace kgtext::sparql
