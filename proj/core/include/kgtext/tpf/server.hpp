#pragma once

#include <memory>
#include <string>
#include <thread>

#include "kgtext/tpf/fragment.hpp"

namespace kgtext {

struct ServerInfo {
  std::string name = "kgtext";
  std::string version;
  std::size_t documents = 0;
  std::size_t labels = 0;
};

/// HTTP front end for a FragmentService.
///
///   GET /fragment?s=&p=&o=&page=  -> FragmentPage JSON or {code, message}
///   GET /health                   -> {"status": "ok", ...build info}
class TpfServer {
 public:
  TpfServer(const FragmentService& service, ServerInfo info);
  ~TpfServer();

  TpfServer(const TpfServer&) = delete;
  TpfServer& operator=(const TpfServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port. Throws
  /// std::runtime_error on failure.
  int bind(const std::string& host, int port);
  /// Serves on the calling thread until stop().
  void listen();
  /// Serves on a background thread.
  void start();
  void stop();

  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace kgtext
