#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <string>

#include "procscope/service/session_store.hpp"

namespace procscope::service {

struct ServiceConfig {
  std::size_t max_upload_bytes = std::size_t{256} << 20;
  std::size_t max_sessions = 64;
  std::chrono::seconds session_ttl{3600};
  std::string cors_origin = "*";
  SessionStore::Clock clock;  // steady_clock when empty
};

struct Request {
  std::string method;
  std::string path;  // without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Routes under /api/v1:
///   GET    /health
///   POST   /logs                       body: OCEL 2.0 JSON
///   GET    /logs/{id}
///   DELETE /logs/{id}
///   GET    /logs/{id}/scopes
///   PUT    /logs/{id}/scopes           body: [{"name", "ruleset"}, ...]
///   POST   /logs/{id}/enrich
///   GET    /logs/{id}/pocel
///   GET    /logs/{id}/graph            ?edge_label=&node_size=&node_color=
///   GET    /logs/{id}/graph.dot        same parameters
///   GET    /logs/{id}/graph.vos
/// Errors are `{"error": {"code", "message", ...}}`.
class ScopeService {
 public:
  explicit ScopeService(ServiceConfig config = {});

  Response handle(const Request& request);

  const ServiceConfig& config() const { return config_; }
  SessionStore& sessions() { return store_; }

 private:
  Response upload(const Request& request);
  Response describe(Session& session);
  Response get_scopes(Session& session);
  Response put_scopes(Session& session, const Request& request);
  Response run_enrich(Session& session);
  Response get_pocel(Session& session);
  Response get_graph(Session& session, const Request& request, const std::string& format);

  ServiceConfig config_;
  SessionStore store_;
};

}  // namespace procscope::service
