#include "kgtext/extractors/remote.hpp"

#include <algorithm>
#include <charconv>

#include "httplib.h"
#include "json.hpp"

namespace kgtext {

using nlohmann::json;

namespace wire {

std::string encode_request(const ExtractionRequest& req) {
  json docs = json::array();
  for (const auto& d : req.documents) docs.push_back({{"id", d.iri}, {"text", d.text}});
  json j{{"question", req.question}, {"documents", std::move(docs)}, {"max_answers", req.max_answers}};
  if (req.window_chars) j["window_chars"] = *req.window_chars;
  return j.dump();
}

ExtractionRequest decode_request(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("request is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("request must be an object");
  ExtractionRequest req;
  try {
    req.question = j.at("question").get<std::string>();
    for (const auto& d : j.at("documents")) {
      req.documents.push_back({d.at("id").get<std::string>(), d.at("text").get<std::string>()});
    }
    if (j.contains("max_answers")) req.max_answers = j["max_answers"].get<std::size_t>();
    if (j.contains("window_chars") && !j["window_chars"].is_null()) {
      req.window_chars = j["window_chars"].get<std::size_t>();
    }
    req.validate();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("bad request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ProtocolError(std::string("bad request: ") + e.what());
  }
  return req;
}

std::string encode_response(const std::vector<AnswerSpan>& spans, std::string_view model_id) {
  json answers = json::array();
  for (const auto& s : spans) {
    answers.push_back(
        {{"doc_id", s.doc_iri}, {"start", s.start}, {"end", s.end}, {"text", s.text}, {"score", s.score}});
  }
  return json{{"answers", std::move(answers)}, {"model_id", model_id}}.dump();
}

ValidatedResponse decode_response(std::string_view body, const ExtractionRequest& req) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("answers") || !j["answers"].is_array()) {
    throw ProtocolError("response must be an object with an 'answers' array");
  }
  ValidatedResponse out;
  if (j.contains("model_id")) {
    if (!j["model_id"].is_string()) throw ProtocolError("'model_id' must be a string");
    out.model_id = j["model_id"].get<std::string>();
  }
  for (const auto& a : j["answers"]) {
    if (!a.is_object() || !a.contains("doc_id") || !a["doc_id"].is_string() ||
        !a.contains("start") || !a["start"].is_number_unsigned() || !a.contains("end") ||
        !a["end"].is_number_unsigned() || !a.contains("text") || !a["text"].is_string() ||
        !a.contains("score") || !a["score"].is_number()) {
      ++out.dropped;
      continue;
    }
    AnswerSpan span;
    span.doc_iri = a["doc_id"].get<std::string>();
    span.start = a["start"].get<std::size_t>();
    span.end = a["end"].get<std::size_t>();
    span.text = a["text"].get<std::string>();
    span.score = a["score"].get<double>();
    auto doc = std::find_if(req.documents.begin(), req.documents.end(),
                            [&](const RequestDocument& d) { return d.iri == span.doc_iri; });
    if (doc == req.documents.end() || span.start >= span.end || span.end > doc->text.size() ||
        doc->text.compare(span.start, span.end - span.start, span.text) != 0) {
      ++out.dropped;
      continue;
    }
    if (span.score < 0.0 || span.score > 1.0) {
      span.score = std::clamp(span.score, 0.0, 1.0);
      ++out.clamped;
    }
    out.spans.push_back(std::move(span));
  }
  sort_spans(out.spans);
  if (out.spans.size() > req.max_answers) out.spans.resize(req.max_answers);
  return out;
}

std::string encode_error(std::string_view code, std::string_view message) {
  return json{{"code", code}, {"message", message}}.dump();
}

}  // namespace wire

Endpoint Endpoint::parse(std::string_view url) {
  constexpr std::string_view kPrefix = "http://";
  if (!url.starts_with(kPrefix)) {
    throw std::invalid_argument("endpoint must start with http://: " + std::string(url));
  }
  url.remove_prefix(kPrefix.size());
  Endpoint ep;
  const auto slash = url.find('/');
  std::string_view authority = url.substr(0, slash);
  if (slash != std::string_view::npos) {
    std::string_view path = url.substr(slash);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    ep.base_path = std::string(path);
  }
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    const std::string_view port = authority.substr(colon + 1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || value <= 0 || value > 65535) {
      throw std::invalid_argument("bad port in endpoint: " + std::string(port));
    }
    ep.port = value;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) throw std::invalid_argument("endpoint has no host");
  ep.host = std::string(authority);
  return ep;
}

std::string Endpoint::origin() const {
  return scheme + "://" + host + ":" + std::to_string(port) + base_path;
}

wire::ValidatedResponse extract_remote(const Endpoint& endpoint, const ExtractionRequest& req,
                                       const RemoteOptions& options) {
  req.validate();
  httplib::Client client(endpoint.host, endpoint.port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_tcp_nodelay(true);

  auto res = client.Post(endpoint.base_path + "/extract", wire::encode_request(req),
                         "application/json");
  if (!res) {
    throw ExtractorUnavailable("extractor at " + endpoint.origin() +
                               " unavailable: " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw ExtractorUnavailable("extractor at " + endpoint.origin() + " returned HTTP " +
                               std::to_string(res->status));
  }
  if (res->status != 200) {
    throw ProtocolError("extractor at " + endpoint.origin() + " returned HTTP " +
                        std::to_string(res->status) + ": " + res->body);
  }
  return wire::decode_response(res->body, req);
}

RemoteExtractor::RemoteExtractor(std::string id, Endpoint endpoint, RemoteOptions options)
    : id_(std::move(id)), endpoint_(std::move(endpoint)), options_(options) {
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

std::vector<AnswerSpan> RemoteExtractor::extract(const ExtractionRequest& req,
                                                 const SlotQuery& /*query*/) const {
  {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return in_flight_ < options_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    const RemoteExtractor* self;
    ~Release() {
      {
        std::lock_guard lock(self->mu_);
        --self->in_flight_;
      }
      self->cv_.notify_one();
    }
  } release{this};

  auto result = extract_remote(endpoint_, req, options_);
  warnings_ += result.dropped + result.clamped;
  return std::move(result.spans);
}

}  // namespace kgtext
