#include <debgraph/cli.hpp>

#include <debgraph/deb.hpp>
#include <debgraph/dot.hpp>
#include <debgraph/error.hpp>
#include <debgraph/graph.hpp>
#include <debgraph/repo.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace debgraph::cli {

namespace {

constexpr std::string_view program = "debgraph";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::set<RelationKind> parse_relations(const std::string& list) {
  std::set<RelationKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw UsageError("empty relation kind in --relations");
    item = item.substr(b, e - b + 1);
    auto kind = relation_kind_from_field(item);
    if (!kind)
      throw UsageError("unknown relation kind '" + item + "'");
    kinds.insert(*kind);
  }
  if (kinds.empty())
    throw UsageError("--relations needs at least one kind");
  return kinds;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw Error(ErrorCode::IoError, "read error on '" + path + "'");
  return ss.str();
}

PackageUniverse load_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> texts;
  texts.reserve(inputs.size());
  for (const auto& p : inputs)
    texts.push_back(read_text_file(p));
  return load_universe(texts);
}

struct Painter {
  bool enabled;
  std::string red(std::string_view s) const {
    return enabled ? "\x1b[31m" + std::string(s) + "\x1b[0m" : std::string(s);
  }
};

int do_scan(const CliConfig& cfg, std::string& payload, std::ostream& err) {
  std::vector<IndexEntry> entries;
  bool failed = false;
  for (const auto& dir : cfg.inputs) {
    ScanResult r = scan_repository(dir);
    for (const auto& e : r.errors) {
      err << program << ": " << dir << "/" << e.path << ": " << e.message << '\n';
      failed = true;
    }
    entries.insert(entries.end(), std::make_move_iterator(r.entries.begin()),
                   std::make_move_iterator(r.entries.end()));
  }
  payload = render_index(entries);
  return failed ? exit_error : exit_ok;
}

int do_graph(const CliConfig& cfg, std::string& payload) {
  PackageUniverse universe = load_inputs(cfg.inputs);
  GraphOptions options;
  options.roots = cfg.roots;
  options.kinds = cfg.relations;
  options.max_depth = cfg.max_depth;
  options.include_external = cfg.include_external;
  DepGraph graph = build_graph(universe, options);
  payload = emit_dot(graph, DotStyle::debtree(cfg.relations));
  return exit_ok;
}

int do_check(const CliConfig& cfg, std::string& payload, const Painter& paint) {
  PackageUniverse universe = load_inputs(cfg.inputs);
  AnalysisReport report =
      check_installability(universe, cfg.roots.front(), cfg.with_recommends);

  std::string out;
  out += "root: " + cfg.roots.front() + "\n";
  out += "closure:";
  for (const auto& n : report.closure)
    out += " " + n;
  out += "\n";
  for (const auto& m : report.missing)
    out += paint.red("missing") + ": " + m.dependent + " -> " + m.unsatisfied + "\n";
  for (const auto& c : report.conflicts)
    out += paint.red("conflict") + ": " + c.a + " conflicts with " + c.b + " (via " +
           c.via + ")\n";
  for (const auto& cycle : report.predepends_cycles) {
    out += paint.red("predepends-cycle") + ":";
    for (const auto& n : cycle)
      out += " " + n + " ->";
    out += " " + cycle.front() + "\n";
  }
  out += "missing=" + std::to_string(report.missing.size()) +
         " conflicts=" + std::to_string(report.conflicts.size()) +
         " cycles=" + std::to_string(report.predepends_cycles.size()) + "\n";
  payload = std::move(out);
  return report.clean() ? exit_ok : exit_findings;
}

int do_info(const CliConfig& cfg, std::string& payload, std::ostream& err) {
  std::vector<ControlStanza> stanzas;
  for (const auto& path : cfg.inputs) {
    DebArchive deb = read_deb_file(path);
    if (cfg.field) {
      auto value = deb.control.get(*cfg.field);
      if (!value) {
        err << program << ": " << path << ": no field '" << *cfg.field << "'\n";
        return exit_error;
      }
      payload += *value + "\n";
    } else {
      stanzas.push_back(std::move(deb.control));
    }
  }
  if (!cfg.field)
    payload = render_stanzas(stanzas);
  return exit_ok;
}

} // namespace

Environment Environment::from_process() {
  Environment env;
  const char* nc = std::getenv("NO_COLOR");
  env.no_color = nc != nullptr && *nc != '\0';
  env.out_is_tty = ::isatty(STDOUT_FILENO) == 1;
  return env;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CliConfig cfg;
  std::string relations = "Depends,Pre-Depends,Recommends,Provides,Conflicts";
  std::optional<std::string> root;

  CLI::App app{"Debian package metadata and dependency-graph tool",
               std::string(program)};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto common = [&](CLI::App* sub, std::string inputs_help) {
    sub->add_option("inputs", cfg.inputs, std::move(inputs_help))->required();
    sub->add_option("--out", cfg.out, "Write the output to this file");
  };

  auto* scan = app.add_subcommand("scan", "Write a Packages index for directories of .deb files");
  common(scan, "Repository directories");

  auto* graph = app.add_subcommand("graph", "Write a DOT dependency graph");
  common(graph, "Packages index files");
  graph->add_option("--root", cfg.roots, "Start from these packages (repeatable)");
  graph->add_option("--relations", relations,
                    "Comma-separated relation fields to draw");
  graph->add_option("--max-depth", cfg.max_depth, "Expansion depth limit")
      ->check(CLI::PositiveNumber);
  graph->add_flag("--include-external", cfg.include_external,
                  "Draw dependencies missing from the inputs as leaf nodes");

  auto* check = app.add_subcommand("check", "Report missing dependencies, conflicts and Pre-Depends cycles");
  common(check, "Packages index files");
  check->add_option("--root", root, "Package to check")->required();
  check->add_flag("--with-recommends", cfg.with_recommends,
                  "Treat Recommends as mandatory");

  auto* info = app.add_subcommand("info", "Print the control stanza of .deb files");
  common(info, ".deb files");
  info->add_option("--field", cfg.field, "Print only this field's value");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (scan->parsed())
      cfg.subcommand = Subcommand::Scan;
    else if (graph->parsed())
      cfg.subcommand = Subcommand::Graph;
    else if (check->parsed())
      cfg.subcommand = Subcommand::Check;
    else
      cfg.subcommand = Subcommand::Info;
    if (root)
      cfg.roots = {*root};
    cfg.relations = parse_relations(relations);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << program << ": " << e.what() << '\n';
    return exit_error;
  } catch (const UsageError& e) {
    err << program << ": " << e.what() << '\n';
    return exit_error;
  }

  Painter paint{!env.no_color && env.out_is_tty && !cfg.out};
  std::string payload;
  int code = exit_error;
  try {
    switch (cfg.subcommand) {
    case Subcommand::Scan: code = do_scan(cfg, payload, err); break;
    case Subcommand::Graph: code = do_graph(cfg, payload); break;
    case Subcommand::Check: code = do_check(cfg, payload, paint); break;
    case Subcommand::Info: code = do_info(cfg, payload, err); break;
    }
  } catch (const Error& e) {
    err << program << ": " << e.what() << '\n';
    return exit_error;
  } catch (const std::exception& e) {
    err << program << ": " << e.what() << '\n';
    return exit_error;
  }

  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary | std::ios::trunc);
    f << payload;
    if (!f) {
      err << program << ": cannot write '" << *cfg.out << "'\n";
      return exit_error;
    }
  } else {
    out << payload;
    out.flush();
  }
  return code;
}

} // namespace debgraph::cli
