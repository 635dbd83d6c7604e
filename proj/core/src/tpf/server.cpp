#include "kgtext/tpf/server.hpp"

#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "kgtext/extractors/remote.hpp"

namespace kgtext {

struct TpfServer::Impl {
  httplib::Server server;
};

TpfServer::TpfServer(const FragmentService& service, ServerInfo info)
    : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  // httplib's default adds SO_REUSEPORT, which would let a second server
  // share a busy port silently. Small keep-alive responses need NODELAY.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    setsockopt(sock, IPPROTO_TCP, TCP_NODELAY, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  srv.set_tcp_nodelay(true);
  srv.Get("/fragment", [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.try_emplace(k, v);
    auto [status, body] = service.handle(params);
    res.status = status;
    res.set_content(body, "application/json");
  });
  const std::string health = nlohmann::json{{"status", "ok"},
                                            {"name", info.name},
                                            {"version", info.version},
                                            {"documents", info.documents},
                                            {"labels", info.labels},
                                            {"page_size", service.page_size()}}
                                 .dump();
  srv.Get("/health", [health](const httplib::Request&, httplib::Response& res) {
    res.set_content(health, "application/json");
  });
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(wire::encode_error(error_code::kNotFound, "no such resource"),
                      "application/json");
    }
  });
}

TpfServer::~TpfServer() { stop(); }

int TpfServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    port_ = srv.bind_to_any_port(host);
  } else {
    port_ = srv.bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void TpfServer::listen() { impl_->server.listen_after_bind(); }

void TpfServer::start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void TpfServer::stop() {
  if (impl_) impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace kgtext
