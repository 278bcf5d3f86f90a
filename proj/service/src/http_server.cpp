#include "procscope/service/http_server.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace procscope::service {

struct HttpServer::Impl {
  ScopeService& service;
  httplib::Server server;

  explicit Impl(ScopeService& s) : service(s) {}

  void forward(const httplib::Request& in, httplib::Response& out) {
    Request req;
    req.method = in.method;
    req.path = in.path;
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    req.body = in.body;
    const Response res = service.handle(req);
    out.status = res.status;
    if (!res.body.empty()) out.set_content(res.body, res.content_type);
  }
};

HttpServer::HttpServer(ScopeService& service) : impl_(std::make_unique<Impl>(service)) {
  httplib::Server& s = impl_->server;
  const std::string origin = service.config().cors_origin;
  // One byte over the limit lets the service report 413 itself.
  s.set_payload_max_length(service.config().max_upload_bytes + 1);
  s.set_default_headers({{"Access-Control-Allow-Origin", origin},
                         {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type"}});

  auto handler = [this](const httplib::Request& in, httplib::Response& out) {
    impl_->forward(in, out);
  };
  const char* pattern = "/api/v1(/.*)?";
  s.Get(pattern, handler);
  s.Post(pattern, handler);
  s.Put(pattern, handler);
  s.Delete(pattern, handler);
  s.Options(pattern, [](const httplib::Request&, httplib::Response& out) { out.status = 204; });
  s.set_error_handler([](const httplib::Request& in, httplib::Response& out) {
    if (!out.body.empty()) return;
    if (out.status == 413) {
      out.set_content(R"({"error":{"code":"payload-too-large","message":"upload too large"}})",
                      "application/json");
    } else if (out.status == 404) {
      out.set_content(
          nlohmann::json{{"error", {{"code", "not-found"}, {"message", "no route for " + in.path}}}}
              .dump(),
          "application/json");
    }
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() { impl_->server.wait_until_ready(); }

}  // namespace procscope::service
