#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "procscope/beg_graph.hpp"
#include "procscope/ocel_json.hpp"
#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"
#include "procscope/stats.hpp"

namespace procscope::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io-error", message) {}
};

struct Style {
  bool enabled = false;

  std::string wrap(const char* code, const std::string& text) const {
    if (!enabled) return text;
    return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
  }
  std::string error(const std::string& t) const { return wrap("1;31", t); }
  std::string warn(const std::string& t) const { return wrap("33", t); }
  std::string ok(const std::string& t) const { return wrap("32", t); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return s.str();
}

// Writes next to the destination and renames into place, so a failed run
// never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  std::random_device rd;
  const fs::path tmp =
      dir / ("." + target.filename().string() + ".tmp" + std::to_string(rd() & 0xffffff));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path);
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path + ": " + ec.message());
  }
}

Log load_log(const std::string& path, std::ostream& err, const Style& style) {
  std::vector<std::string> warnings;
  Log log = import_json(read_file(path), warnings);
  for (const std::string& w : warnings) err << style.warn("warning: ") << w << "\n";
  return log;
}

std::vector<ScopeDefinition> load_scopes(const std::string& path) {
  return parse_scope_file(read_file(path));
}

void report_error(std::ostream& err, const Style& style, const Error& e) {
  err << style.error("error: ") << e.code() << ": " << e.what() << "\n";
  if (const auto* m = dynamic_cast<const ModelError*>(&e)) {
    for (const Violation& v : m->report().violations) {
      err << "  " << v.code << " at " << v.location << ": " << v.message << "\n";
    }
  }
}

int cmd_validate(const std::string& log_path, const std::string& scopes_path, std::ostream& out,
                 std::ostream& err, const Style& style) {
  const Log log = load_log(log_path, err, style);
  const std::vector<ScopeDefinition> defs = load_scopes(scopes_path);

  std::size_t findings = 0;
  for (const ScopeDefinition& def : defs) {
    for (const Violation& v : validate_ruleset(def.ruleset, log).violations) {
      out << def.name << " " << v.location << ": " << style.error(v.code) << ": " << v.message
          << "\n";
      ++findings;
    }
  }
  if (findings > 0) {
    out << findings << (findings == 1 ? " finding" : " findings") << "\n";
    return kFindings;
  }
  out << style.ok("OK") << ": " << defs.size() << (defs.size() == 1 ? " scope" : " scopes")
      << " valid\n";
  return kOk;
}

int cmd_enrich(const std::string& log_path, const std::string& scopes_path,
               const std::string& out_path, std::ostream& out, std::ostream& err,
               const Style& style) {
  const Log log = load_log(log_path, err, style);
  const std::vector<ScopeDefinition> defs = load_scopes(scopes_path);
  EnrichedLog enriched;
  try {
    enriched = enrich_all(log, defs);
  } catch (const ScopeApplicationError& e) {
    err << style.error("error: ") << e.code() << " " << e.scope() << ": " << e.what() << "\n";
    return kFailure;
  }
  write_file_atomic(out_path, export_json(enriched.log));
  for (const ScopeSummary& s : enriched.summaries) {
    out << s.name << ": " << s.event_count << " events, " << s.object_count << " objects\n";
  }
  return kOk;
}

struct GraphOptions {
  std::string input;
  std::string output;
  std::string format = "dot";
  GraphView view;
};

int cmd_graph(const GraphOptions& opt, std::ostream& out, std::ostream& err,
              const Style& style) {
  const Log log = load_log(opt.input, err, style);
  const ExecutionGraph graph = build_graph(log);
  std::string text;
  if (opt.format == "dot") {
    text = export_dot(graph, opt.view);
  } else if (opt.format == "vosviewer") {
    text = export_vosviewer(graph).dump(2) + "\n";
  } else {
    text = export_graph_json(graph).dump(2) + "\n";
  }
  if (opt.output.empty() || opt.output == "-") {
    out << text;
  } else {
    write_file_atomic(opt.output, text);
  }
  return kOk;
}

int cmd_stats(const std::string& log_path, bool json, std::ostream& out, std::ostream& err,
              const Style& style) {
  const LogStats stats = compute_stats(load_log(log_path, err, style));
  if (json) {
    out << stats_to_json(stats).dump(2) << "\n";
  } else {
    out << format_stats(stats);
  }
  return kOk;
}

template <typename Enum>
CLI::Validator choice(std::optional<Enum> (*parse)(std::string_view), const char* names) {
  return CLI::Validator(
      [parse, names](std::string& value) -> std::string {
        if (parse(value)) return {};
        return "must be one of " + std::string(names);
      },
      names);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool terminal) {
  const char* no_color = std::getenv("PROCSCOPE_NO_COLOR");
  Style style{terminal && (no_color == nullptr || *no_color == '\0')};

  CLI::App app{"Process scopes for object-centric event logs", "procscope"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "procscope 0.1.0");

  std::string log_path;
  std::string scopes_path;
  std::string out_path;

  CLI::App* validate = app.add_subcommand("validate", "Check a scope file against a log");
  validate->add_option("log", log_path, "OCEL 2.0 JSON log")->required();
  validate->add_option("scopes", scopes_path, "scope file")->required();

  CLI::App* enrich = app.add_subcommand("enrich", "Write the scope-enriched log");
  enrich->add_option("log", log_path, "OCEL 2.0 JSON log")->required();
  enrich->add_option("scopes", scopes_path, "scope file")->required();
  enrich->add_option("out", out_path, "output path")->required();

  GraphOptions gopt;
  std::string edge_label(to_string(gopt.view.edge_label));
  std::string node_size(to_string(gopt.view.node_size));
  std::string node_color(to_string(gopt.view.node_color));
  CLI::App* graph = app.add_subcommand("graph", "Export the execution graph of an enriched log");
  graph->add_option("pocel", gopt.input, "scope-enriched log")->required();
  graph->add_option("out", gopt.output, "output path (stdout when omitted)");
  graph->add_option("--format", gopt.format, "dot, json or vosviewer")
      ->check(CLI::IsMember({"dot", "json", "vosviewer"}))
      ->capture_default_str();
  graph->add_option("--edge-label", edge_label, "edge label in DOT output")
      ->check(choice(edge_label_from_string, "{object_types,shared_objects,avg_flow_time}"))
      ->capture_default_str();
  graph->add_option("--node-size", node_size, "metric scaling node width")
      ->check(choice(node_size_from_string, "{object_count,type_diversity}"))
      ->capture_default_str();
  graph->add_option("--node-color", node_color, "degree shading node fill")
      ->check(choice(degree_mode_from_string, "{in,out,total}"))
      ->capture_default_str();

  bool stats_json = false;
  CLI::App* stats = app.add_subcommand("stats", "Summarize a log");
  stats->add_option("log", log_path, "OCEL 2.0 JSON log")->required();
  stats->add_flag("--json", stats_json, "print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const std::vector<CLI::App*> parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << style.error("usage: ") << e.what() << "\n";
    err << "run 'procscope --help' for usage\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(log_path, scopes_path, out, err, style);
    if (enrich->parsed()) return cmd_enrich(log_path, scopes_path, out_path, out, err, style);
    if (graph->parsed()) {
      gopt.view.edge_label = *edge_label_from_string(edge_label);
      gopt.view.node_size = *node_size_from_string(node_size);
      gopt.view.node_color = *degree_mode_from_string(node_color);
      return cmd_graph(gopt, out, err, style);
    }
    return cmd_stats(log_path, stats_json, out, err, style);
  } catch (const SyntaxError& e) {
    err << style.error("error: ") << scopes_path << ":" << e.what() << "\n";
    return kFailure;
  } catch (const Error& e) {
    report_error(err, style, e);
    return kFailure;
  } catch (const std::exception& e) {
    err << style.error("error: ") << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace procscope::cli
