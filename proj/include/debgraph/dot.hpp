#pragma once

#include <debgraph/graph.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>

namespace debgraph {

struct EdgeStyle {
  std::string color;
  std::string line; // "solid", "dotted" or "dashed"
  std::string arrowhead;
  bool bold = false;

  friend bool operator==(const EdgeStyle&, const EdgeStyle&) = default;
};

struct NodeStyle {
  std::string shape;
  std::string outline; // "solid" or "dashed"

  friend bool operator==(const NodeStyle&, const NodeStyle&) = default;
};

// Colours, line styles and arrowheads per relation kind, after debtree.
class DotStyle {
public:
  // Throws std::invalid_argument when a kind in required has no edge
  // style or a node kind has no node style.
  DotStyle(std::map<RelationKind, EdgeStyle> edges,
           std::map<NodeKind, NodeStyle> nodes,
           const std::set<RelationKind>& required);

  // Depends, Pre-Depends, Recommends, Suggests, Provides and Conflicts.
  static DotStyle debtree();

  // The debtree conventions restricted to kinds; also knows Enhances,
  // Breaks and Replaces.
  static DotStyle debtree(const std::set<RelationKind>& kinds);

  const std::map<RelationKind, EdgeStyle>& edges() const noexcept { return edges_; }
  const std::map<NodeKind, NodeStyle>& nodes() const noexcept { return nodes_; }

  const EdgeStyle* edge(RelationKind kind) const noexcept;
  const NodeStyle& node(NodeKind kind) const { return nodes_.at(kind); }

private:
  std::map<RelationKind, EdgeStyle> edges_;
  std::map<NodeKind, NodeStyle> nodes_;
};

// Quoted DOT identifier.
std::string dot_quote(std::string_view s);

// Complete "digraph deps { ... }" document. Throws std::invalid_argument
// when the graph holds an edge kind the style does not map.
std::string emit_dot(const DepGraph& graph, const DotStyle& style,
                     const std::optional<std::string>& title = std::nullopt);

// Legend subgraph with one labelled sample edge per mapped kind, to be
// placed inside a digraph.
std::string emit_legend(const DotStyle& style);

} // namespace debgraph
