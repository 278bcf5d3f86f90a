#include "procscope/service/scope_service.hpp"

#include <algorithm>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "procscope/beg_graph.hpp"
#include "procscope/ocel_json.hpp"
#include "procscope/stats.hpp"

namespace procscope::service {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kPrefix = "/api/v1";

Response json_response(int status, const ordered_json& body) {
  return {status, "application/json", body.dump()};
}

ordered_json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

Response error(int status, const std::string& code, const std::string& message) {
  return json_response(status, error_body(code, message));
}

ordered_json violations_json(const ValidationReport& report) {
  ordered_json out = ordered_json::array();
  for (const Violation& v : report.violations) {
    out.push_back({{"code", v.code}, {"location", v.location}, {"message", v.message}});
  }
  return out;
}

// Import failures map to 400 with whatever detail the error carries.
Response import_error(const Error& e) {
  ordered_json body = error_body(e.code(), e.what());
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    body["error"]["offset"] = p->offset();
  } else if (const auto* s = dynamic_cast<const SchemaError*>(&e)) {
    body["error"]["path"] = s->path();
  } else if (const auto* m = dynamic_cast<const ModelError*>(&e)) {
    body["error"]["violations"] = violations_json(m->report());
  }
  return json_response(400, body);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> out;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    out.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return out;
}

Response method_not_allowed() { return error(405, "method-not-allowed", "method not allowed"); }

}  // namespace

ScopeService::ScopeService(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_.max_sessions, config_.session_ttl, config_.clock) {}

Response ScopeService::handle(const Request& request) {
  std::string_view path = request.path;
  if (path.substr(0, kPrefix.size()) != kPrefix) {
    return error(404, "not-found", "no route for " + request.path);
  }
  path.remove_prefix(kPrefix.size());
  if (!path.empty() && path.front() != '/') {
    return error(404, "not-found", "no route for " + request.path);
  }
  const std::vector<std::string_view> seg = split_path(path);
  const std::string& m = request.method;

  try {
    if (seg.size() == 1 && seg[0] == "health") {
      if (m != "GET") return method_not_allowed();
      return json_response(200, {{"status", "ok"}});
    }
    if (seg.empty() || seg[0] != "logs") {
      return error(404, "not-found", "no route for " + request.path);
    }
    if (seg.size() == 1) {
      if (m != "POST") return method_not_allowed();
      return upload(request);
    }

    const std::string id(seg[1]);
    if (seg.size() > 3) return error(404, "not-found", "no route for " + request.path);
    const std::string_view leaf = seg.size() == 3 ? seg[2] : std::string_view();
    static const std::vector<std::string_view> kLeaves = {
        "", "scopes", "enrich", "pocel", "graph", "graph.dot", "graph.vos"};
    if (std::find(kLeaves.begin(), kLeaves.end(), leaf) == kLeaves.end()) {
      return error(404, "not-found", "no route for " + request.path);
    }
    std::shared_ptr<Session> session = store_.find(id);
    if (!session) return error(404, "unknown-log", "no log with id '" + id + "'");

    if (leaf.empty()) {
      if (m == "GET") return describe(*session);
      if (m == "DELETE") {
        store_.erase(id);
        return {204, "application/json", ""};
      }
      return method_not_allowed();
    }
    if (leaf == "scopes") {
      if (m == "GET") return get_scopes(*session);
      if (m == "PUT") return put_scopes(*session, request);
      return method_not_allowed();
    }
    if (leaf == "enrich") {
      if (m != "POST") return method_not_allowed();
      return run_enrich(*session);
    }
    if (m != "GET") return method_not_allowed();
    if (leaf == "pocel") return get_pocel(*session);
    if (leaf == "graph") return get_graph(*session, request, "json");
    if (leaf == "graph.dot") return get_graph(*session, request, "dot");
    return get_graph(*session, request, "vos");
  } catch (const Error& e) {
    return error(500, e.code(), e.what());
  } catch (const std::exception& e) {
    return error(500, "internal-error", e.what());
  }
}

Response ScopeService::upload(const Request& request) {
  if (request.body.size() > config_.max_upload_bytes) {
    return error(413, "payload-too-large",
                 "upload exceeds " + std::to_string(config_.max_upload_bytes) + " bytes");
  }
  std::vector<std::string> warnings;
  Log log;
  try {
    log = import_json(request.body, warnings);
  } catch (const Error& e) {
    return import_error(e);
  }
  std::shared_ptr<Session> session = store_.create(log);
  ordered_json body;
  body["log_id"] = session->id;
  body["stats"] = stats_to_json(compute_stats(log));
  body["registries"] = registries_to_json(log);
  body["warnings"] = warnings;
  return json_response(200, body);
}

Response ScopeService::describe(Session& session) {
  std::vector<ScopeDefinition> scopes;
  std::shared_ptr<const EnrichedState> enriched;
  {
    std::lock_guard lock(session.mutex);
    scopes = session.scopes;
    enriched = session.enriched;
  }
  ordered_json body;
  body["log_id"] = session.id;
  body["stats"] = stats_to_json(compute_stats(session.base));
  body["registries"] = registries_to_json(session.base);
  body["scope_count"] = scopes.size();
  body["enriched"] = enriched != nullptr;
  return json_response(200, body);
}

Response ScopeService::get_scopes(Session& session) {
  std::lock_guard lock(session.mutex);
  return json_response(200, scopes_to_json(session.scopes));
}

Response ScopeService::put_scopes(Session& session, const Request& request) {
  std::vector<ScopeDefinition> scopes;
  try {
    scopes = scopes_from_json(nlohmann::json::parse(request.body));
  } catch (const nlohmann::json::parse_error& e) {
    return error(400, "parse-error", e.what());
  } catch (const SchemaError& e) {
    ordered_json body = error_body(e.code(), e.what());
    body["error"]["path"] = e.path();
    return json_response(400, body);
  } catch (const Error& e) {
    return error(400, e.code(), e.what());
  }

  ordered_json findings = ordered_json::array();
  for (std::size_t i = 0; i < scopes.size(); ++i) {
    for (const Violation& v : validate_ruleset(scopes[i].ruleset, session.base).violations) {
      findings.push_back({{"scope", scopes[i].name},
                          {"index", i},
                          {"code", v.code},
                          {"location", v.location},
                          {"message", v.message}});
    }
  }
  if (!findings.empty()) {
    ordered_json body = error_body("invalid-ruleset", "one or more rulesets are invalid");
    body["error"]["findings"] = findings;
    return json_response(422, body);
  }

  std::lock_guard lock(session.mutex);
  session.scopes = std::move(scopes);
  // The enriched log always corresponds to the current scope list.
  session.enriched.reset();
  return json_response(200, {{"valid", true}, {"scope_count", session.scopes.size()}});
}

Response ScopeService::run_enrich(Session& session) {
  std::lock_guard lock(session.mutex);
  EnrichedLog result;
  try {
    result = enrich_all(session.base, session.scopes);
  } catch (const ScopeApplicationError& e) {
    ordered_json body = error_body(e.code(), e.what());
    body["error"]["scope"] = e.scope();
    body["error"]["index"] = e.index();
    return json_response(422, body);
  }
  ordered_json summaries = ordered_json::array();
  for (const ScopeSummary& s : result.summaries) {
    summaries.push_back({{"name", s.name}, {"events", s.event_count}, {"objects", s.object_count}});
  }
  session.enriched = std::make_shared<const EnrichedState>(
      EnrichedState{std::move(result.log), std::move(result.summaries)});
  return json_response(200, {{"scopes", summaries}});
}

Response ScopeService::get_pocel(Session& session) {
  const auto enriched = session.enriched_snapshot();
  if (!enriched) return error(409, "not-enriched", "run POST enrich first");
  return {200, "application/json", export_json(enriched->log)};
}

Response ScopeService::get_graph(Session& session, const Request& request,
                                 const std::string& format) {
  GraphView view;
  auto param = [&](const char* key) -> const std::string* {
    auto it = request.query.find(key);
    return it == request.query.end() ? nullptr : &it->second;
  };
  if (const std::string* v = param("edge_label")) {
    auto parsed = edge_label_from_string(*v);
    if (!parsed) return error(400, "invalid-parameter", "edge_label: unknown value '" + *v + "'");
    view.edge_label = *parsed;
  }
  if (const std::string* v = param("node_size")) {
    auto parsed = node_size_from_string(*v);
    if (!parsed) return error(400, "invalid-parameter", "node_size: unknown value '" + *v + "'");
    view.node_size = *parsed;
  }
  if (const std::string* v = param("node_color")) {
    auto parsed = degree_mode_from_string(*v);
    if (!parsed) return error(400, "invalid-parameter", "node_color: unknown value '" + *v + "'");
    view.node_color = *parsed;
  }

  const auto enriched = session.enriched_snapshot();
  if (!enriched) return error(409, "not-enriched", "run POST enrich first");
  const ExecutionGraph graph = build_graph(enriched->log);
  if (format == "dot") return {200, "text/vnd.graphviz", export_dot(graph, view)};
  if (format == "vos") return json_response(200, export_vosviewer(graph));

  ordered_json body;
  body["view"] = {{"edge_label", to_string(view.edge_label)},
                  {"node_size", to_string(view.node_size)},
                  {"node_color", to_string(view.node_color)}};
  const ordered_json g = export_graph_json(graph);
  body["nodes"] = g["nodes"];
  body["edges"] = g["edges"];
  return json_response(200, body);
}

}  // namespace procscope::service
