// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <debgraph/control.hpp>
#include <debgraph/dot.hpp>
#include <debgraph/graph.hpp>
#include <debgraph/relation.hpp>
#include <debgraph/repo.hpp>
#include <debgraph/version.hpp>

#include "support/dot_parser.hpp"
#include "support/dpkg_oracle.hpp"
#include "support/edge_styles.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/install_oracle.hpp"
#include "support/pipeline.hpp"
#include "support/process.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace debgraph;
using namespace debgraph::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

PackageUniverse universe_of(std::string text) {
  std::vector<std::string> texts{std::move(text)};
  return load_universe(texts);
}

Outcome version_order() {
  if (!dpkg_available())
    return fail("dpkg is not installed, no comparator to check against");
  Rng rng(1001);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < 10000; ++i) {
    std::string a = random_version(rng);
    pairs.emplace_back(a, i % 4 == 0 ? random_version(rng) : related_version(rng, a));
  }
  auto expected = dpkg_compare(pairs);
  std::size_t disagreements = 0, equal = 0;
  std::string first;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto order = compare_versions(parse_version(pairs[i].first), parse_version(pairs[i].second));
    int c = order < 0 ? -1 : order > 0 ? 1 : 0;
    equal += expected[i] == 0;
    if (c != expected[i] && disagreements++ == 0)
      first = pairs[i].first + " vs " + pairs[i].second;
  }
  std::string detail = std::to_string(pairs.size()) + " pairs, " + std::to_string(equal) +
                       " equal, " + std::to_string(disagreements) + " disagreements";
  if (disagreements)
    return fail(detail + ", first: " + first);
  return {true, detail};
}

Outcome round_trips() {
  Rng rng(1002);
  int stanza_cases = 0, relation_cases = 0;
  for (int i = 0; i < 1000; ++i, ++stanza_cases) {
    std::vector<ControlStanza> stanzas;
    std::size_t n = 1 + pick(rng, 4);
    for (std::size_t k = 0; k < n; ++k)
      stanzas.push_back(random_stanza(rng));
    std::string text = render_stanzas(stanzas);
    auto parsed = parse_stanzas(text);
    if (parsed != stanzas || render_stanzas(parsed) != text)
      return fail("stanza case " + std::to_string(i) + " differs:\n" + text);
  }
  for (int i = 0; i < 1000; ++i, ++relation_cases) {
    auto kind = all_relation_kinds[pick(rng, all_relation_kinds.size())];
    RelationExpr e = random_relation(rng, kind);
    std::string text = render_relation(e);
    auto parsed = parse_relation(kind, text);
    if (parsed != e || render_relation(parsed) != text)
      return fail("relation case " + std::to_string(i) + " differs: " + text);
  }
  return {true, std::to_string(stanza_cases) + " stanza cases, " +
                    std::to_string(relation_cases) + " relation cases, 0 failures"};
}

Outcome installability() {
  Rng rng(1003);
  int with_missing = 0;
  for (int round = 0; round < 500; ++round) {
    auto ou = random_oracle_universe(rng, 10);
    bool rec = chance(rng, 0.5);
    auto got = check_installability(universe_of(oracle_control(ou)), ou.root, rec);
    auto want = run_oracle(ou, rec);
    std::set<std::pair<std::string, std::string>> missing;
    for (const auto& m : got.missing)
      missing.emplace(m.dependent, m.unsatisfied);
    if (std::set<std::string>(got.closure.begin(), got.closure.end()) != want.closure)
      return fail("closure differs on universe " + std::to_string(round));
    if (missing != want.missing)
      return fail("missing set differs on universe " + std::to_string(round));
    with_missing += !want.missing.empty();
  }
  return {true, "500 universes, " + std::to_string(with_missing) +
                    " with missing dependencies, 0 mismatches"};
}

Outcome pipeline() {
  TempDir dir;
  auto run = run_pipeline(dir);
  if (run.files.size() < 3)
    return fail("fewer than 3 fixtures");
  if (run.dot != read_test_data("pipeline.dot"))
    return fail("DOT differs from the golden file");
  auto stanzas = parse_stanzas(run.index);
  if (stanzas.size() != run.files.size())
    return fail("index has " + std::to_string(stanzas.size()) + " records");
  for (const auto& s : stanzas) {
    auto file = dir.path() / "repo" / *s.get("Filename");
    auto digest = run_shell("sha256sum " + shell_quote(file.string()) + " | cut -c1-64");
    if (digest.exit_code != 0 || digest.out != *s.get("SHA256") + "\n")
      return fail("SHA256 of " + *s.get("Filename") + " does not match sha256sum");
  }
  return {true, std::to_string(stanzas.size()) +
                    " debs, DOT byte-identical to golden, SHA256 verified by sha256sum"};
}

Outcome edge_styles() {
  GraphOptions options;
  options.include_external = true;
  auto graph = build_graph(universe_of(read_test_data("maratona.Packages")), options);
  auto doc = parse_dot(emit_dot(graph, DotStyle::debtree()));
  auto problem = check_edge_styles(graph, doc);
  if (!problem.empty())
    return fail(problem);
  return {true, std::to_string(doc.edges.size()) + " edges, one style per kind"};
}

struct Spawned {
  int code;
  std::string out, err;
};

Spawned spawn(const std::string& args) {
  TempDir dir;
  auto err_file = dir.path() / "stderr";
  auto r = run_shell(shell_quote(DEBGRAPH_CLI) + " " + args + " 2>" +
                     shell_quote(err_file.string()));
  return {r.exit_code, r.out, read_file(err_file)};
}

Outcome exit_codes() {
  TempDir dir;
  write_repo(dir, "repo", pipeline_packages());
  auto ok = spawn("scan " + shell_quote((dir.path() / "repo").string()));
  if (ok.code != 0 || parse_stanzas(ok.out).size() != 3)
    return fail("scan exited " + std::to_string(ok.code));
  auto findings = spawn("check " + shell_quote(test_data("maratona-missing.Packages").string()) +
                        " --root maratona-desktop");
  if (findings.code != 1 || findings.out.find("missing=1 conflicts=0 cycles=0\n") == std::string::npos)
    return fail("check with a missing dependency exited " + std::to_string(findings.code));
  auto error = spawn("check " + shell_quote(test_data("maratona.Packages").string()) +
                     " --root nosuch");
  if (error.code != 2 || error.err.find("nosuch") == std::string::npos)
    return fail("unknown root exited " + std::to_string(error.code));
  return {true, "scan=0, check with missing dependency=1, unknown root=2"};
}

Outcome determinism() {
  TempDir dir;
  auto names = write_repo(dir, "repo", pipeline_packages());
  std::string repo = shell_quote((dir.path() / "repo").string());
  std::string idx = shell_quote(test_data("maratona.Packages").string());
  std::vector<std::string> commands{
      "scan " + repo,
      "graph " + idx + " --include-external",
      "check " + idx + " --root maratona-desktop --with-recommends",
      "info " + shell_quote((dir.path() / "repo" / names[0]).string()),
  };
  for (const auto& c : commands) {
    auto a = spawn(c), b = spawn(c);
    if (a.out.empty())
      return fail("no output from: " + c);
    if (a.out != b.out || a.code != b.code)
      return fail("output differs between runs of: " + c);
  }
  return {true, std::to_string(commands.size()) + " commands byte-identical across two runs"};
}

} // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    std::function<Outcome()> run;
    double limit_seconds; // 0: no limit
  };
  std::vector<Criterion> criteria{
      {1, "version order agrees with dpkg", version_order, 60},
      {2, "stanza and relation round trips", round_trips, 0},
      {3, "installability matches exhaustive oracle", installability, 120},
      {4, "end-to-end pipeline", pipeline, 0},
      {5, "edge styles per relation kind", edge_styles, 0},
      {6, "CLI exit codes", exit_codes, 0},
      {7, "determinism", determinism, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.pass = false;
      o.detail += ", over the time limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.name
              << " (" << o.detail << ", " << timing << ")" << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
