#include <debgraph/dot.hpp>
#include <debgraph/graph.hpp>
#include <debgraph/repo.hpp>

#include "support/dot_parser.hpp"
#include "support/edge_styles.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/pipeline.hpp"
#include "support/process.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace debgraph;
using namespace debgraph::testing;

namespace {

PackageUniverse universe(std::string text) {
  std::vector<std::string> texts{std::move(text)};
  return load_universe(texts);
}

DepGraph maratona_graph() {
  GraphOptions o;
  o.include_external = true;
  return build_graph(universe(read_test_data("maratona.Packages")), o);
}

std::size_t count_lines_with(const std::string& text, std::string_view needle) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = std::string_view(text).substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    n += line.find(needle) != std::string_view::npos;
    pos = nl == std::string::npos ? text.size() : nl + 1;
  }
  return n;
}

} // namespace

TEST(EmitDot, EmptyGraph) {
  EXPECT_EQ(emit_dot(DepGraph{}, DotStyle::debtree()), "digraph deps {\n}\n");
  auto doc = parse_dot(emit_dot(DepGraph{}, DotStyle::debtree(), "Maratona \"Linux\""));
  EXPECT_EQ(doc.graph_attrs["label"], "Maratona \"Linux\"");
}

TEST(EmitDot, SingleDependsEdgeIsBlue) {
  auto g = build_graph(universe("Package: aa\nVersion: 1\nArchitecture: all\nDepends: bb\n\n"
                                "Package: bb\nVersion: 1\nArchitecture: all\n"),
                       GraphOptions{});
  std::string dot = emit_dot(g, DotStyle::debtree());
  EXPECT_EQ(count_lines_with(dot, "->"), 1u);
  EXPECT_EQ(count_lines_with(dot, "color=\"blue\""), 1u);
  auto doc = parse_dot(dot);
  ASSERT_EQ(doc.edges.size(), 1u);
  EXPECT_EQ(doc.edges[0].attrs["color"], "blue");
  EXPECT_EQ(doc.edges[0].from, "p:aa=1");
}

TEST(EmitDot, MaratonaGolden) {
  std::string dot = emit_dot(maratona_graph(), DotStyle::debtree());
  EXPECT_EQ(dot, read_test_data("maratona.dot"));
}

TEST(EmitDot, MaratonaEdgeStylePerKind) {
  auto g = maratona_graph();
  auto doc = parse_dot(emit_dot(g, DotStyle::debtree()));
  EXPECT_EQ(check_edge_styles(g, doc), "");
}

TEST(EmitDot, ParsedStructure) {
  auto g = maratona_graph();
  auto doc = parse_dot(emit_dot(g, DotStyle::debtree()));
  EXPECT_EQ(doc.name, "deps");
  ASSERT_EQ(doc.nodes.size(), g.nodes.size());
  ASSERT_EQ(doc.edges.size(), g.edges.size());
  std::set<std::string> declared;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = doc.nodes[i];
    EXPECT_EQ(n.id, g.nodes[i].id);
    declared.insert(n.id);
    switch (g.nodes[i].kind) {
    case NodeKind::Real:
      EXPECT_EQ(n.attrs.at("shape"), "box");
      EXPECT_EQ(n.attrs.at("style"), "solid");
      EXPECT_EQ(n.attrs.at("label"), g.nodes[i].name);
      break;
    case NodeKind::Virtual:
      EXPECT_EQ(n.attrs.at("shape"), "octagon");
      EXPECT_EQ(n.attrs.at("label"), g.nodes[i].name + " (virtual)");
      break;
    case NodeKind::External:
      EXPECT_EQ(n.attrs.at("shape"), "box");
      EXPECT_EQ(n.attrs.at("style"), "dashed");
      EXPECT_EQ(n.attrs.at("label"), g.nodes[i].name);
      break;
    }
  }
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& e : doc.edges) {
    EXPECT_TRUE(declared.contains(e.from)) << e.from;
    EXPECT_TRUE(declared.contains(e.to)) << e.to;
    order.emplace_back(e.from, e.to);
  }
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}

TEST(EmitDot, AlternativesShareLabels) {
  auto g = build_graph(universe("Package: boca\nVersion: 1\nArchitecture: all\n"
                                "Depends: php-pgsql | php-mysql, apache2 | nginx | lighttpd\n"),
                       [] {
                         GraphOptions o;
                         o.include_external = true;
                         return o;
                       }());
  auto doc = parse_dot(emit_dot(g, DotStyle::debtree()));
  std::map<std::string, std::string> label;
  for (auto& e : doc.edges)
    label[e.to] = e.attrs["label"];
  EXPECT_EQ(label["x:php-pgsql"], label["x:php-mysql"]);
  EXPECT_EQ(label["x:apache2"], label["x:nginx"]);
  EXPECT_EQ(label["x:apache2"], label["x:lighttpd"]);
  EXPECT_NE(label["x:apache2"], label["x:php-pgsql"]);
  EXPECT_EQ(label["x:php-pgsql"], "alt 1");
}

TEST(EmitDot, ConstraintsAndQuoting) {
  auto g = build_graph(universe("Package: g++\nVersion: 4:11.2.0-1ubuntu1\nArchitecture: amd64\n"
                                "Depends: python3.10 (>= 3.10.4), lib.so+x\n\n"
                                "Package: python3.10\nVersion: 3.10.6-1~22.04\nArchitecture: amd64\n\n"
                                "Package: lib.so+x\nVersion: 1.0+dfsg\nArchitecture: amd64\n"),
                       GraphOptions{});
  auto doc = parse_dot(emit_dot(g, DotStyle::debtree()));
  std::set<std::string> ids, labels;
  for (auto& n : doc.nodes) {
    ids.insert(n.id);
    labels.insert(n.attrs["label"]);
  }
  EXPECT_EQ(labels, (std::set<std::string>{"g++", "python3.10", "lib.so+x"}));
  EXPECT_TRUE(ids.contains("p:g++=4:11.2.0-1ubuntu1"));
  bool found = false;
  for (auto& e : doc.edges)
    if (e.to == "p:python3.10=3.10.6-1~22.04") {
      EXPECT_EQ(e.attrs["headlabel"], "(>= 3.10.4)");
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(EmitDot, Deterministic) {
  auto g = maratona_graph();
  EXPECT_EQ(emit_dot(g, DotStyle::debtree()), emit_dot(maratona_graph(), DotStyle::debtree()));
  // Edge order in the graph does not leak into the output.
  auto shuffled = g;
  Rng rng(71);
  std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
  EXPECT_EQ(emit_dot(shuffled, DotStyle::debtree()), emit_dot(g, DotStyle::debtree()));
}

TEST(DotStyle, MandatoryMappings) {
  auto s = DotStyle::debtree();
  EXPECT_EQ(s.edges().size(), 6u);
  EXPECT_EQ(*s.edge(RelationKind::Depends), (EdgeStyle{"blue", "solid", "normal", false}));
  EXPECT_EQ(*s.edge(RelationKind::Recommends), (EdgeStyle{"black", "solid", "normal", false}));
  EXPECT_EQ(*s.edge(RelationKind::PreDepends), (EdgeStyle{"purple", "solid", "normal", true}));
  EXPECT_EQ(*s.edge(RelationKind::Provides), (EdgeStyle{"green", "solid", "inv", false}));
  EXPECT_EQ(*s.edge(RelationKind::Conflicts), (EdgeStyle{"red", "solid", "normal", false}));
  EXPECT_EQ(*s.edge(RelationKind::Suggests), (EdgeStyle{"black", "dotted", "normal", false}));
  EXPECT_EQ(s.edge(RelationKind::Breaks), nullptr);
  EXPECT_EQ(s.node(NodeKind::Virtual), (NodeStyle{"octagon", "solid"}));
}

TEST(DotStyle, MissingMappingIsAConstructionError) {
  std::map<NodeKind, NodeStyle> nodes{{NodeKind::Real, {"box", "solid"}},
                                      {NodeKind::Virtual, {"octagon", "solid"}},
                                      {NodeKind::External, {"box", "dashed"}}};
  std::map<RelationKind, EdgeStyle> edges{{RelationKind::Depends, {"blue", "solid", "normal", false}}};
  EXPECT_NO_THROW(DotStyle(edges, nodes, {RelationKind::Depends}));
  EXPECT_THROW(DotStyle(edges, nodes, {RelationKind::Depends, RelationKind::Conflicts}),
               std::invalid_argument);
  nodes.erase(NodeKind::External);
  EXPECT_THROW(DotStyle(edges, nodes, {}), std::invalid_argument);

  auto all = DotStyle::debtree({all_relation_kinds.begin(), all_relation_kinds.end()});
  EXPECT_EQ(all.edges().size(), all_relation_kinds.size());

  // A style without Conflicts cannot draw a graph that has them.
  auto only_depends = DotStyle::debtree({RelationKind::Depends});
  EXPECT_THROW(emit_dot(maratona_graph(), only_depends), std::invalid_argument);
}

TEST(EmitLegend, DefaultStyle) {
  std::string legend = emit_legend(DotStyle::debtree());
  EXPECT_EQ(legend, read_test_data("legend.dot"));
  auto doc = parse_dot("digraph legend {\n" + legend + "}\n");
  ASSERT_EQ(doc.edges.size(), 6u);
  std::vector<std::string> labels;
  for (auto& e : doc.edges) {
    labels.push_back(e.attrs["label"]);
    EXPECT_EQ(e.subgraph, "cluster_legend");
  }
  EXPECT_EQ(labels, (std::vector<std::string>{"Depends", "Pre-Depends", "Recommends", "Suggests",
                                              "Provides", "Conflicts"}));
  EXPECT_EQ(doc.edges[4].attrs["arrowhead"], "inv");
  EXPECT_EQ(doc.edges[4].attrs["color"], "green");
}

TEST(EmitLegend, RestrictedStyle) {
  auto doc = parse_dot_fragment(emit_legend(DotStyle::debtree({RelationKind::Depends})));
  ASSERT_EQ(doc.edges.size(), 1u);
  EXPECT_EQ(doc.edges[0].attrs["label"], "Depends");
  EXPECT_EQ(doc.edges[0].attrs["color"], "blue");
}

TEST(DotReader, RejectsMalformedInput) {
  EXPECT_THROW(parse_dot("digraph x {"), std::runtime_error);
  EXPECT_THROW(parse_dot("digraph x { \"a\" -> ; }"), std::runtime_error);
  EXPECT_THROW(parse_dot("digraph x { \"a }"), std::runtime_error);
  EXPECT_NO_THROW(parse_dot("digraph x { \"a\" -> \"b\" [color=\"red\"]; }"));
}

TEST(Pipeline, DotMatchesGolden) {
  TempDir dir;
  auto run = run_pipeline(dir);
  EXPECT_EQ(run.dot, read_test_data("pipeline.dot"));
  auto stanzas = parse_stanzas(run.index);
  ASSERT_EQ(stanzas.size(), 3u);
  for (const auto& s : stanzas) {
    auto file = dir.path() / "repo" / *s.get("Filename");
    auto digest = run_shell("sha256sum " + shell_quote(file.string()) + " | cut -c1-64");
    EXPECT_EQ(*s.get("SHA256") + "\n", digest.out);
  }
}
