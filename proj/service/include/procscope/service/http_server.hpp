#pragma once

#include <memory>
#include <string>

#include "procscope/service/scope_service.hpp"

namespace procscope::service {

/// HTTP/1.1 front end for a ScopeService. Adds CORS headers and answers
/// preflight requests.
class HttpServer {
 public:
  explicit HttpServer(ScopeService& service);
  ~HttpServer();

  /// Binds to `host:port` (port 0 picks a free port). Returns the bound
  /// port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool listen();
  void stop();
  /// Blocks until listen() has started accepting.
  void wait_until_ready();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace procscope::service
