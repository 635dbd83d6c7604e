#include "kgtext/sparql/planner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <optional>

#include "httplib.h"
#include "json.hpp"
#include "kgtext/extractors/remote.hpp"

namespace kgtext::sparql {

struct HttpFragmentSource::Impl {
  Endpoint endpoint;
  httplib::Client client;
  std::mutex mu;

  Impl(Endpoint ep, int timeout_ms) : endpoint(std::move(ep)), client(endpoint.host, endpoint.port) {
    const time_t secs = timeout_ms / 1000;
    const time_t usecs = (timeout_ms % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_keep_alive(true);
    client.set_tcp_nodelay(true);
  }
};

HttpFragmentSource::HttpFragmentSource(const std::string& url, int timeout_ms)
    : impl_(std::make_unique<Impl>(Endpoint::parse(url), timeout_ms)) {}

HttpFragmentSource::~HttpFragmentSource() = default;

FragmentPage HttpFragmentSource::fetch(const TriplePattern& tp, std::size_t page) {
  const std::string path = impl_->endpoint.base_path + fragment_url(tp, page);
  std::lock_guard lock(impl_->mu);
  auto res = impl_->client.Get(path);
  if (!res) {
    throw TransportError("fragment endpoint " + impl_->endpoint.origin() +
                         " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status == 200) return fragment_page_from_json(res->body);
  const auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_object() && j.contains("code") && j["code"].is_string()) {
    throw ServiceError(j["code"].get<std::string>(), j.value("message", std::string()));
  }
  throw ProtocolError("fragment endpoint returned HTTP " + std::to_string(res->status));
}

namespace {

class Planner {
 public:
  Planner(FragmentSource& source, SolutionTable& table) : source_(source), table_(table) {}

  void solve(const std::vector<TriplePattern>& remaining, const Binding& u, double score) {
    if (remaining.empty()) {
      auto& best = found_[u];
      best = std::max(best, score);
      return;
    }

    std::vector<TriplePattern> subst;
    subst.reserve(remaining.size());
    try {
      for (const auto& tp : remaining) subst.push_back(substitute(tp, u));
    } catch (const TermError&) {
      return;  // a literal landed in subject position: no triple can match
    }

    std::optional<std::size_t> chosen;
    std::optional<FragmentPage> first;
    for (std::size_t i = 0; i < subst.size(); ++i) {
      auto page = probe(subst[i]);
      if (!page) continue;
      if (page->estimated_total == 0) return;
      if (!first || page->estimated_total < first->estimated_total) {
        chosen = i;
        first = std::move(page);
      }
    }
    if (!chosen) {
      std::string msg = "skipped branch";
      if (!u.empty()) msg += " " + u.to_string();
      msg += ": no fetchable pattern among";
      for (const auto& tp : subst) msg += " " + tp.to_string();
      table_.warnings.push_back(std::move(msg));
      return;
    }

    std::vector<TriplePattern> rest;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (i != *chosen) rest.push_back(remaining[i]);
    }

    const TriplePattern& tp = subst[*chosen];
    FragmentPage page = std::move(*first);
    while (true) {
      for (const auto& m : page.matches) {
        auto v = unify(tp, m.triple);
        if (!v) continue;
        ++table_.stats.bindings_substituted;
        solve(rest, u.merged(*v), std::min(score, m.score));
      }
      if (!page.next_page || page.matches.empty()) break;
      page = fetch(tp, page.page + 1);
      ++table_.stats.pages_fetched;
    }
  }

  std::map<Binding, double> found_;

 private:
  FragmentPage fetch(const TriplePattern& tp, std::size_t page) {
    ++table_.stats.requests;
    return source_.fetch(tp, page);
  }

  std::optional<FragmentPage> probe(const TriplePattern& tp) {
    try {
      return fetch(tp, 1);
    } catch (const ServiceError& e) {
      if (e.code() == error_code::kUnsupportedPattern) return std::nullopt;
      throw;
    }
  }

  FragmentSource& source_;
  SolutionTable& table_;
};

}  // namespace

SolutionTable plan_and_execute(const SelectQuery& q, FragmentSource& source) {
  if (q.bgp.empty()) throw std::invalid_argument("empty basic graph pattern");
  SolutionTable table;
  table.columns = q.projection;
  Planner planner(source, table);
  planner.solve(q.bgp, Binding{}, std::numeric_limits<double>::infinity());

  std::map<Binding, double> projected;
  for (const auto& [b, score] : planner.found_) {
    auto [it, inserted] = projected.try_emplace(b.projected(q.projection), score);
    if (!inserted) it->second = std::max(it->second, score);
  }
  for (auto& [b, score] : projected) {
    table.rows.push_back({b, score});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const SolutionRow& a, const SolutionRow& b) { return a.score > b.score; });
  return table;
}

SolutionTable plan_and_execute(const SelectQuery& q, const std::string& endpoint_url) {
  HttpFragmentSource source(endpoint_url);
  return plan_and_execute(q, source);
}

}  // namespace kgtext::sparql
