#include <csignal>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "procscope/service/http_server.hpp"

namespace {

procscope::service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HTTP API for process scopes", "procscope-server"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_upload_mb = 256;
  std::size_t max_sessions = 64;
  int ttl_seconds = 3600;
  std::string cors_origin = "*";
  app.add_option("--host", host, "address to bind")->capture_default_str();
  app.add_option("--port", port, "port to listen on")->capture_default_str();
  app.add_option("--max-upload-mb", max_upload_mb, "largest accepted log upload")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-sessions", max_sessions, "sessions kept before LRU eviction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--session-ttl", ttl_seconds, "idle seconds before a session expires")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cors-origin", cors_origin, "value of Access-Control-Allow-Origin")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  procscope::service::ServiceConfig config;
  config.max_upload_bytes = max_upload_mb << 20;
  config.max_sessions = max_sessions;
  config.session_ttl = std::chrono::seconds(ttl_seconds);
  config.cors_origin = cors_origin;
  procscope::service::ScopeService service(config);
  procscope::service::HttpServer server(service);

  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 3;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on http://" << host << ":" << bound << "/api/v1\n";
  return server.listen() ? 0 : 3;
}
