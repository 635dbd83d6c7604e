#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/extractors/extractor.hpp"

namespace kgtext {

/// Extractor wire protocol.
///
///   POST /extract
///   {"question": str, "documents": [{"id": str, "text": str}],
///    "max_answers": int, "window_chars": int?}
///   -> {"answers": [{"doc_id", "start", "end", "text", "score"}],
///       "model_id": str}
///
/// Offsets are UTF-8 byte offsets into the document text as transmitted.
namespace wire {

std::string encode_request(const ExtractionRequest& req);
/// Throws ProtocolError on a schema violation.
ExtractionRequest decode_request(std::string_view body);

std::string encode_response(const std::vector<AnswerSpan>& spans, std::string_view model_id);

struct ValidatedResponse {
  std::vector<AnswerSpan> spans;  ///< sorted by span_before
  std::string model_id;
  std::size_t dropped = 0;  ///< spans failing offset, slice or document checks
  std::size_t clamped = 0;  ///< scores pulled back into [0, 1]
};

/// Parses and validates a response against the request it answers. Bad
/// spans are dropped and counted; a bad envelope throws ProtocolError.
ValidatedResponse decode_response(std::string_view body, const ExtractionRequest& req);

std::string encode_error(std::string_view code, std::string_view message);

}  // namespace wire

/// Parsed http://host:port[/base] endpoint.
struct Endpoint {
  std::string scheme = "http";
  std::string host;
  int port = 80;
  std::string base_path;  ///< without trailing slash

  /// Throws std::invalid_argument for anything but http://host[:port][/path].
  static Endpoint parse(std::string_view url);
  std::string origin() const;
};

struct RemoteOptions {
  std::chrono::milliseconds timeout{30000};
  std::size_t max_in_flight = 4;
};

/// One POST /extract round trip. Throws ExtractorUnavailable on transport
/// failure, timeout or a 5xx status; ProtocolError on any other non-200 or
/// an invalid envelope.
wire::ValidatedResponse extract_remote(const Endpoint& endpoint, const ExtractionRequest& req,
                                       const RemoteOptions& options = {});

/// Remote extractor with a per-instance in-flight cap and warning counters.
class RemoteExtractor final : public Extractor {
 public:
  RemoteExtractor(std::string id, Endpoint endpoint, RemoteOptions options = {});

  const std::string& id() const override { return id_; }
  std::vector<AnswerSpan> extract(const ExtractionRequest& req,
                                  const SlotQuery& query) const override;

  std::size_t warnings() const { return warnings_.load(); }
  const Endpoint& endpoint() const { return endpoint_; }

 private:
  std::string id_;
  Endpoint endpoint_;
  RemoteOptions options_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  mutable std::size_t in_flight_ = 0;
  mutable std::atomic<std::size_t> warnings_{0};
};

}  // namespace kgtext
