#include <debgraph/dot.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace debgraph {

namespace {

const std::map<RelationKind, EdgeStyle>& debtree_edges() {
  static const std::map<RelationKind, EdgeStyle> table{
      {RelationKind::Depends, {"blue", "solid", "normal", false}},
      {RelationKind::PreDepends, {"purple", "solid", "normal", true}},
      {RelationKind::Recommends, {"black", "solid", "normal", false}},
      {RelationKind::Suggests, {"black", "dotted", "normal", false}},
      {RelationKind::Enhances, {"black", "dashed", "normal", false}},
      {RelationKind::Provides, {"green", "solid", "inv", false}},
      {RelationKind::Conflicts, {"red", "solid", "normal", false}},
      {RelationKind::Breaks, {"red", "dashed", "normal", false}},
      {RelationKind::Replaces, {"darkorange", "solid", "normal", false}},
  };
  return table;
}

const std::map<NodeKind, NodeStyle>& debtree_nodes() {
  static const std::map<NodeKind, NodeStyle> table{
      {NodeKind::Real, {"box", "solid"}},
      {NodeKind::Virtual, {"octagon", "solid"}},
      {NodeKind::External, {"box", "dashed"}},
  };
  return table;
}

std::string edge_attributes(const EdgeStyle& s) {
  std::string line = s.line;
  if (s.bold)
    line += ",bold";
  return "color=" + dot_quote(s.color) + ", style=" + dot_quote(line) +
         ", arrowhead=" + dot_quote(s.arrowhead);
}

std::string node_label(const GraphNode& n) {
  return n.kind == NodeKind::Virtual ? n.name + " (virtual)" : n.name;
}

} // namespace

DotStyle::DotStyle(std::map<RelationKind, EdgeStyle> edges,
                   std::map<NodeKind, NodeStyle> nodes,
                   const std::set<RelationKind>& required)
    : edges_(std::move(edges)), nodes_(std::move(nodes)) {
  for (RelationKind k : required)
    if (!edges_.contains(k))
      throw std::invalid_argument("no edge style for " + std::string(field_name(k)));
  for (NodeKind k : {NodeKind::Real, NodeKind::Virtual, NodeKind::External})
    if (!nodes_.contains(k))
      throw std::invalid_argument("no node style for " + std::string(to_string(k)) +
                                  " nodes");
}

DotStyle DotStyle::debtree() {
  return debtree({RelationKind::Depends, RelationKind::PreDepends,
                  RelationKind::Recommends, RelationKind::Suggests,
                  RelationKind::Provides, RelationKind::Conflicts});
}

DotStyle DotStyle::debtree(const std::set<RelationKind>& kinds) {
  std::map<RelationKind, EdgeStyle> edges;
  for (RelationKind k : kinds)
    if (auto it = debtree_edges().find(k); it != debtree_edges().end())
      edges.insert(*it);
  return DotStyle(std::move(edges), debtree_nodes(), kinds);
}

const EdgeStyle* DotStyle::edge(RelationKind kind) const noexcept {
  auto it = edges_.find(kind);
  return it == edges_.end() ? nullptr : &it->second;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_dot(const DepGraph& graph, const DotStyle& style,
                     const std::optional<std::string>& title) {
  for (const auto& e : graph.edges)
    if (style.edge(e.kind) == nullptr)
      throw std::invalid_argument("graph has " + std::string(field_name(e.kind)) +
                                  " edges but the style does not map them");

  std::string out = "digraph deps {\n";
  if (title) {
    out += "  label=" + dot_quote(*title) + ";\n";
    out += "  labelloc=\"t\";\n";
  }

  // Already sorted by (kind, name, version) when built; sort again so
  // hand-assembled graphs render the same way.
  std::vector<const GraphNode*> nodes;
  for (const auto& n : graph.nodes)
    nodes.push_back(&n);
  std::stable_sort(nodes.begin(), nodes.end(), [](const GraphNode* a, const GraphNode* b) {
    if (a->kind != b->kind)
      return a->kind < b->kind;
    if (a->name != b->name)
      return a->name < b->name;
    if (a->version && b->version)
      return compare_versions(*a->version, *b->version) < 0;
    return a->id < b->id;
  });
  for (const GraphNode* n : nodes) {
    const NodeStyle& ns = style.node(n->kind);
    out += "  " + dot_quote(n->id) + " [label=" + dot_quote(node_label(*n)) +
           ", shape=" + dot_quote(ns.shape) + ", style=" + dot_quote(ns.outline) +
           "];\n";
  }

  std::vector<const GraphEdge*> edges;
  for (const auto& e : graph.edges)
    edges.push_back(&e);
  std::stable_sort(edges.begin(), edges.end(), [](const GraphEdge* a, const GraphEdge* b) {
    return std::tie(a->from, a->to, a->kind, a->alt_group, a->constraint) <
           std::tie(b->from, b->to, b->kind, b->alt_group, b->constraint);
  });
  for (const GraphEdge* e : edges) {
    out += "  " + dot_quote(e->from) + " -> " + dot_quote(e->to) + " [" +
           edge_attributes(*style.edge(e->kind));
    if (e->alt_group)
      out += ", label=" + dot_quote("alt " + std::to_string(*e->alt_group));
    if (e->constraint)
      out += ", headlabel=" + dot_quote("(" + *e->constraint + ")");
    out += "];\n";
  }

  out += "}\n";
  return out;
}

std::string emit_legend(const DotStyle& style) {
  std::string out = "  subgraph cluster_legend {\n";
  out += "    label=\"Legend\";\n";
  out += "    node [shape=\"plaintext\", label=\"\"];\n";
  for (RelationKind k : all_relation_kinds) {
    const EdgeStyle* s = style.edge(k);
    if (s == nullptr)
      continue;
    std::string name(field_name(k));
    out += "    " + dot_quote("legend:" + name + ":tail") + " -> " +
           dot_quote("legend:" + name + ":head") + " [label=" + dot_quote(name) +
           ", " + edge_attributes(*s) + "];\n";
  }
  out += "  }\n";
  return out;
}

} // namespace debgraph
