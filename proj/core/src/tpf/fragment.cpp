#include "kgtext/tpf/fragment.hpp"

#include <charconv>
#include <set>

#include "json.hpp"
#include "kgtext/extractors/remote.hpp"

namespace kgtext {

using nlohmann::json;
using nlohmann::ordered_json;

int ServiceError::http_status() const {
  if (code_ == error_code::kUpstreamExtractorError) return 502;
  if (code_ == error_code::kNotFound) return 404;
  return 400;
}

namespace {

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    const bool unreserved = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                            (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

Term parse_param(const std::optional<std::string>& raw, const char* default_var, bool literal_ok) {
  if (!raw || raw->empty() || *raw == "_") return Term::variable(default_var);
  const std::string& v = *raw;
  if (v.front() == '?') return Term::variable(v.substr(1));
  if (v.front() == '"') {
    if (!literal_ok) throw TermError("literal not allowed in this position");
    if (v.size() < 2 || v.back() != '"') throw TermError("unterminated literal");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) {
        ++i;
        out.push_back(v[i] == 'n' ? '\n' : v[i] == 't' ? '\t' : v[i]);
      } else {
        out.push_back(v[i]);
      }
    }
    return Term::literal(std::move(out));
  }
  if (v.size() >= 2 && v.front() == '<' && v.back() == '>') return Term::iri(v.substr(1, v.size() - 2));
  return Term::iri(v);
}

ordered_json term_json(const Term& t) {
  return ordered_json{{"type", std::string(to_string(t.kind()))}, {"value", t.value()}};
}

Term term_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  auto value = j.at("value").get<std::string>();
  if (type == "iri") return Term::iri(std::move(value));
  if (type == "literal") return Term::literal(std::move(value));
  if (type == "variable") return Term::variable(std::move(value));
  throw ProtocolError("unknown term type '" + type + "'");
}

}  // namespace

std::string encode_term_param(const Term& t) {
  switch (t.kind()) {
    case TermKind::kVariable: return "_";
    case TermKind::kIri: return t.value();
    case TermKind::kLiteral: {
      std::string out = "\"";
      for (char c : t.value()) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      return out + "\"";
    }
  }
  return "_";
}

TriplePattern parse_pattern_params(const std::optional<std::string>& s,
                                   const std::optional<std::string>& p,
                                   const std::optional<std::string>& o) {
  try {
    return TriplePattern(parse_param(s, "s", false), parse_param(p, "p", false),
                         parse_param(o, "o", true));
  } catch (const TermError& e) {
    throw ServiceError(error_code::kBadPattern, e.what());
  }
}

std::string fragment_url(const TriplePattern& tp, std::size_t page) {
  return "/fragment?s=" + percent_encode(encode_term_param(tp.s)) +
         "&p=" + percent_encode(encode_term_param(tp.p)) +
         "&o=" + percent_encode(encode_term_param(tp.o)) + "&page=" + std::to_string(page);
}

std::string to_json(const FragmentPage& page) {
  ordered_json j;
  j["pattern"] = {{"s", term_json(page.pattern.s)},
                  {"p", term_json(page.pattern.p)},
                  {"o", term_json(page.pattern.o)}};
  ordered_json matches = ordered_json::array();
  for (const auto& m : page.matches) {
    matches.push_back({{"s", term_json(m.triple.s)},
                       {"p", term_json(m.triple.p)},
                       {"o", term_json(m.triple.o)},
                       {"score", m.score}});
  }
  j["matches"] = std::move(matches);
  j["estimated_total"] = page.estimated_total;
  j["page"] = page.page;
  j["page_size"] = page.page_size;
  j["next_page"] = page.next_page ? ordered_json(*page.next_page) : ordered_json();
  j["extensions"] = {"per-triple-scores"};
  return j.dump();
}

FragmentPage fragment_page_from_json(std::string_view body) {
  try {
    const json j = json::parse(body);
    FragmentPage page;
    const auto& pat = j.at("pattern");
    page.pattern = TriplePattern(term_from_json(pat.at("s")), term_from_json(pat.at("p")),
                                 term_from_json(pat.at("o")));
    for (const auto& m : j.at("matches")) {
      page.matches.push_back({Triple(term_from_json(m.at("s")), term_from_json(m.at("p")),
                                     term_from_json(m.at("o"))),
                              m.at("score").get<double>()});
    }
    page.estimated_total = j.at("estimated_total").get<std::size_t>();
    page.page = j.at("page").get<std::size_t>();
    page.page_size = j.at("page_size").get<std::size_t>();
    if (j.contains("next_page") && j["next_page"].is_string()) {
      page.next_page = j["next_page"].get<std::string>();
    }
    return page;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("bad fragment page: ") + e.what());
  } catch (const TermError& e) {
    throw ProtocolError(std::string("bad fragment page: ") + e.what());
  }
}

std::vector<ScoredTriple> materialize(const TriplePattern& tp, const QueryResult& result) {
  std::vector<ScoredTriple> all;
  std::set<Triple> seen;
  for (const RankedBinding& rb : result.bindings) {
    auto t = ground(tp, rb.binding);
    if (!t || !seen.insert(*t).second) continue;
    all.push_back({std::move(*t), rb.score});
  }
  return all;
}

FragmentPage paginate(const TriplePattern& tp, const std::vector<ScoredTriple>& all,
                      std::size_t page, std::size_t page_size) {
  if (page == 0 || page_size == 0) throw std::invalid_argument("page and page_size must be >= 1");
  FragmentPage out;
  out.pattern = tp;
  out.page = page;
  out.page_size = page_size;
  out.estimated_total = all.size();
  const std::size_t first = std::min(all.size(), (page - 1) * page_size);
  const std::size_t last = std::min(all.size(), first + page_size);
  out.matches.assign(all.begin() + static_cast<std::ptrdiff_t>(first),
                     all.begin() + static_cast<std::ptrdiff_t>(last));
  if (page * page_size < all.size()) out.next_page = fragment_url(tp, page + 1);
  return out;
}

FragmentService::FragmentService(const QaExecutor& executor, std::size_t page_size)
    : executor_(executor), page_size_(page_size) {
  if (page_size_ == 0) throw std::invalid_argument("page_size must be >= 1");
}

FragmentPage FragmentService::fragment(const TriplePattern& tp, std::size_t page) const {
  if (page == 0) throw ServiceError(error_code::kBadPattern, "page must be >= 1");
  if (classify_pattern(tp) == PatternShape::kUnsupported) {
    throw ServiceError(error_code::kUnsupportedPattern,
                       "only (s, p, ?o), (?s, p, o) and fully bound patterns are answerable: " +
                           tp.to_string());
  }
  QueryResult result;
  try {
    result = executor_.answer(tp);
  } catch (const LexicalizationError&) {
    // A term without a label cannot be found in text; the fragment is empty.
    result.pattern = tp;
  } catch (const UpstreamExtractorError& e) {
    throw ServiceError(error_code::kUpstreamExtractorError, e.what());
  }

  return paginate(tp, materialize(tp, result), page, page_size_);
}

std::pair<int, std::string> FragmentService::handle(
    const std::map<std::string, std::string>& params) const {
  auto get = [&params](const char* key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  try {
    const TriplePattern tp = parse_pattern_params(get("s"), get("p"), get("o"));
    std::size_t page = 1;
    if (auto raw = get("page")) {
      auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), page);
      if (ec != std::errc{} || ptr != raw->data() + raw->size() || page == 0) {
        throw ServiceError(error_code::kBadPattern, "page must be a positive integer");
      }
    }
    return {200, to_json(fragment(tp, page))};
  } catch (const ServiceError& e) {
    return {e.http_status(), wire::encode_error(e.code(), e.what())};
  }
}

}  // namespace kgtext
