#pragma once

#include <debgraph/repo.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace debgraph {

enum class NodeKind { Real, Virtual, External };

std::string_view to_string(NodeKind kind) noexcept;

struct GraphNode {
  // "p:<name>=<version>", "v:<name>" or "x:<name>"
  std::string id;
  NodeKind kind = NodeKind::Real;
  std::string name;
  std::optional<DebVersion> version;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::string from;
  std::string to;
  RelationKind kind = RelationKind::Depends;
  // Rendered constraint such as ">= 2.0", or "= 1.2" for versioned Provides.
  std::optional<std::string> constraint;
  // Shared by the alternatives of one OR-group, numbered from 1 per source.
  std::optional<unsigned> alt_group;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// A relation atom whose target is not in the universe, left out of the
// graph because external nodes were not requested.
struct UnresolvedAtom {
  std::string dependent;
  RelationKind kind = RelationKind::Depends;
  std::string atom;

  friend bool operator==(const UnresolvedAtom&, const UnresolvedAtom&) = default;
};

struct DepGraph {
  // Sorted by (kind, name, version).
  std::vector<GraphNode> nodes;
  // In discovery order.
  std::vector<GraphEdge> edges;
  std::vector<UnresolvedAtom> unresolved;

  const GraphNode* find(std::string_view id) const noexcept;

  friend bool operator==(const DepGraph&, const DepGraph&) = default;
};

std::string node_id(NodeKind kind, std::string_view name,
                    const std::optional<DebVersion>& version = std::nullopt);

inline const std::set<RelationKind> default_graph_kinds{
    RelationKind::Depends, RelationKind::PreDepends, RelationKind::Recommends,
    RelationKind::Provides, RelationKind::Conflicts};

struct GraphOptions {
  // Empty: every package of the universe is a root.
  std::vector<std::string> roots;
  std::set<RelationKind> kinds = default_graph_kinds;
  // Nodes farther than this many edges from a root are not expanded.
  std::optional<unsigned> max_depth;
  bool include_external = false;
};

// Throws Error{UnknownRoot}.
DepGraph build_graph(const PackageUniverse& universe, const GraphOptions& options);

// Elementary cycles over edges of the given kinds, as node-name sequences
// rotated to their lexicographically smallest form, sorted.
std::vector<std::vector<std::string>> detect_cycles(const DepGraph& graph,
                                                    const std::set<RelationKind>& kinds);

struct MissingDependency {
  std::string dependent;
  std::string unsatisfied; // rendered OR-group

  auto operator<=>(const MissingDependency&) const = default;
};

struct ConflictEntry {
  std::string a;
  std::string b;
  std::string via; // rendered Conflicts atom of a

  auto operator<=>(const ConflictEntry&) const = default;
};

struct AnalysisReport {
  std::vector<MissingDependency> missing;
  std::vector<ConflictEntry> conflicts;
  std::vector<std::vector<std::string>> predepends_cycles;
  // Names of the packages pulled in from the root, sorted, root included.
  std::vector<std::string> closure;

  bool clean() const noexcept {
    return missing.empty() && conflicts.empty() && predepends_cycles.empty();
  }

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// The package an atom resolves to: the highest real version satisfying the
// constraint, otherwise the first matching provider by (name, version
// descending). nullopt when nothing satisfies it.
std::optional<std::size_t> resolve_atom(const PackageUniverse& universe,
                                        const PackageAtom& atom);

// Installs nothing; follows Pre-Depends and Depends (and Recommends on
// request) from the newest version of root, taking the leftmost satisfiable
// alternative of each OR-group. Throws Error{UnknownRoot}.
AnalysisReport check_installability(const PackageUniverse& universe,
                                    std::string_view root, bool with_recommends);

} // namespace debgraph
