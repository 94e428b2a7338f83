#pragma once

#include <debgraph/relation.hpp>

#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace debgraph::cli {

enum class Subcommand { Scan, Graph, Check, Info };

struct CliConfig {
  Subcommand subcommand = Subcommand::Scan;
  std::vector<std::string> inputs;
  std::optional<std::string> out;
  std::vector<std::string> roots;
  std::set<RelationKind> relations;
  std::optional<unsigned> max_depth;
  bool with_recommends = false;
  bool include_external = false;
  std::optional<std::string> field;
};

struct Environment {
  bool no_color = false;
  // Whether the payload stream is a terminal; styling is only used then.
  bool out_is_tty = false;

  static Environment from_process();
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_findings = 1;
inline constexpr int exit_error = 2;

// Runs one command; args exclude the program name. Payload goes to out
// (or the --out file), diagnostics to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

} // namespace debgraph::cli
