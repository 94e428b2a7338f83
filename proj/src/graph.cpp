#include <debgraph/graph.hpp>

#include <debgraph/error.hpp>

#include "cycles.hpp"

#include <algorithm>
#include <deque>
#include <variant>

namespace debgraph {

namespace {

// Relations along which build_graph() keeps expanding the target.
bool expands_target(RelationKind kind) noexcept {
  return kind == RelationKind::Depends || kind == RelationKind::PreDepends ||
         kind == RelationKind::Recommends || kind == RelationKind::Suggests;
}

std::string render_constraint(const VersionConstraint& c) {
  return std::string(to_string(c.op)) + " " + c.version.str();
}

bool atom_matches_version(const PackageAtom& atom, const DebVersion& v) {
  return !atom.constraint || satisfies(v, atom.constraint->op, atom.constraint->version);
}

// Highest real version of atom.name satisfying its constraint.
std::optional<std::size_t> resolve_real(const PackageUniverse& u,
                                        const PackageAtom& atom) {
  std::optional<std::size_t> best;
  for (std::size_t i : u.versions_of(atom.name)) {
    if (!atom_matches_version(atom, u[i].version))
      continue;
    if (!best || compare_versions(u[i].version, u[*best].version) > 0)
      best = i;
  }
  return best;
}

bool provider_matches(const PackageAtom& atom, const Provider& p) {
  if (!atom.constraint)
    return true;
  return p.provided_version &&
         satisfies(*p.provided_version, atom.constraint->op, atom.constraint->version);
}

class GraphBuilder {
public:
  GraphBuilder(const PackageUniverse& u, const GraphOptions& o)
      : universe_(u), options_(o) {}

  DepGraph build() {
    if (options_.roots.empty()) {
      for (std::size_t i = 0; i < universe_.size(); ++i)
        enqueue_package(i, 0);
    } else {
      for (const auto& r : options_.roots) {
        auto idx = universe_.newest(r);
        if (!idx)
          throw Error(ErrorCode::UnknownRoot, "unknown root package '" + r + "'");
        enqueue_package(*idx, 0);
      }
    }

    while (!queue_.empty()) {
      auto [item, depth] = queue_.front();
      queue_.pop_front();
      bool expand = !options_.max_depth || depth < *options_.max_depth;
      if (!expand)
        continue;
      if (auto* pkg = std::get_if<std::size_t>(&item))
        expand_package(*pkg, depth);
      else
        expand_virtual(std::get<std::string>(item), depth);
    }

    std::sort(graph_.nodes.begin(), graph_.nodes.end(),
              [](const GraphNode& a, const GraphNode& b) {
                if (a.kind != b.kind)
                  return a.kind < b.kind;
                if (a.name != b.name)
                  return a.name < b.name;
                if (a.version && b.version)
                  return compare_versions(*a.version, *b.version) < 0;
                return a.id < b.id;
              });
    return std::move(graph_);
  }

private:
  using Item = std::variant<std::size_t, std::string>;

  const std::string& real_node(std::size_t pkg) {
    const auto& meta = universe_[pkg];
    return add_node(NodeKind::Real, meta.name, meta.version);
  }

  const std::string& add_node(NodeKind kind, const std::string& name,
                              const std::optional<DebVersion>& version) {
    std::string id = node_id(kind, name, version);
    auto [it, inserted] = ids_.insert(std::move(id));
    if (inserted)
      graph_.nodes.push_back(GraphNode{*it, kind, name, version});
    return *it;
  }

  void enqueue_package(std::size_t pkg, unsigned depth) {
    real_node(pkg);
    if (seen_packages_.insert(pkg).second)
      queue_.emplace_back(Item{pkg}, depth);
  }

  void enqueue_virtual(const std::string& name, unsigned depth) {
    if (seen_virtuals_.insert(name).second)
      queue_.emplace_back(Item{name}, depth);
  }

  void expand_package(std::size_t pkg, unsigned depth) {
    const PackageMeta& meta = universe_[pkg];
    std::string from = real_node(pkg);
    unsigned alt_counter = 0;

    for (RelationKind kind : all_relation_kinds) {
      if (!options_.kinds.contains(kind))
        continue;
      const RelationExpr* expr = meta.relation(kind);
      if (expr == nullptr)
        continue;
      for (const auto& group : expr->groups) {
        std::optional<unsigned> alt;
        if (group.size() > 1)
          alt = ++alt_counter;
        for (const auto& atom : group)
          add_atom_edge(from, meta, kind, atom, alt, depth);
      }
    }
  }

  void add_atom_edge(const std::string& from, const PackageMeta& meta,
                     RelationKind kind, const PackageAtom& atom,
                     std::optional<unsigned> alt, unsigned depth) {
    if (kind == RelationKind::Provides) {
      std::string to = add_node(NodeKind::Virtual, atom.name, std::nullopt);
      std::optional<std::string> c;
      if (atom.provided_version)
        c = "= " + atom.provided_version->str();
      graph_.edges.push_back(GraphEdge{from, std::move(to), kind, std::move(c), alt});
      return;
    }

    std::optional<std::string> c;
    if (atom.constraint)
      c = render_constraint(*atom.constraint);

    if (!universe_.versions_of(atom.name).empty()) {
      auto target = resolve_real(universe_, atom);
      if (!target)
        target = universe_.newest(atom.name);
      std::string to = real_node(*target);
      if (expands_target(kind))
        enqueue_package(*target, depth + 1);
      graph_.edges.push_back(GraphEdge{from, std::move(to), kind, std::move(c), alt});
      return;
    }

    if (!universe_.providers_of(atom.name).empty()) {
      std::string to = add_node(NodeKind::Virtual, atom.name, std::nullopt);
      if (expands_target(kind) && options_.kinds.contains(RelationKind::Provides))
        enqueue_virtual(atom.name, depth + 1);
      graph_.edges.push_back(GraphEdge{from, std::move(to), kind, std::move(c), alt});
      return;
    }

    if (options_.include_external) {
      std::string to = add_node(NodeKind::External, atom.name, std::nullopt);
      graph_.edges.push_back(GraphEdge{from, std::move(to), kind, std::move(c), alt});
      return;
    }
    graph_.unresolved.push_back(UnresolvedAtom{meta.name, kind, render_atom(atom)});
  }

  // Providers of a virtual package hang below it; their Provides edges
  // point back at it.
  void expand_virtual(const std::string& name, unsigned depth) {
    for (const auto& p : universe_.providers_of(name))
      enqueue_package(p.package, depth + 1);
  }

  const PackageUniverse& universe_;
  const GraphOptions& options_;
  DepGraph graph_;
  std::set<std::string> ids_;
  std::set<std::size_t> seen_packages_;
  std::set<std::string> seen_virtuals_;
  std::deque<std::pair<Item, unsigned>> queue_;
};

} // namespace

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
  case NodeKind::Real: return "real";
  case NodeKind::Virtual: return "virtual";
  case NodeKind::External: return "external";
  }
  return "?";
}

std::string node_id(NodeKind kind, std::string_view name,
                    const std::optional<DebVersion>& version) {
  switch (kind) {
  case NodeKind::Real:
    return "p:" + std::string(name) + "=" + (version ? version->str() : "");
  case NodeKind::Virtual:
    return "v:" + std::string(name);
  case NodeKind::External:
    return "x:" + std::string(name);
  }
  return std::string(name);
}

const GraphNode* DepGraph::find(std::string_view id) const noexcept {
  for (const auto& n : nodes)
    if (n.id == id)
      return &n;
  return nullptr;
}

DepGraph build_graph(const PackageUniverse& universe, const GraphOptions& options) {
  return GraphBuilder(universe, options).build();
}

std::vector<std::vector<std::string>> detect_cycles(const DepGraph& graph,
                                                    const std::set<RelationKind>& kinds) {
  std::map<std::string_view, std::size_t> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    index.emplace(graph.nodes[i].id, i);
    names.push_back(graph.nodes[i].name);
  }
  cycles::Adjacency adj(graph.nodes.size());
  for (const auto& e : graph.edges) {
    if (!kinds.contains(e.kind))
      continue;
    auto from = index.find(e.from);
    auto to = index.find(e.to);
    if (from != index.end() && to != index.end())
      adj[from->second].push_back(to->second);
  }
  return cycles::canonical_cycles(cycles::elementary_circuits(adj), names);
}

std::optional<std::size_t> resolve_atom(const PackageUniverse& universe,
                                        const PackageAtom& atom) {
  if (auto real = resolve_real(universe, atom))
    return real;

  std::optional<std::size_t> best;
  for (const auto& p : universe.providers_of(atom.name)) {
    if (!provider_matches(atom, p))
      continue;
    if (!best) {
      best = p.package;
      continue;
    }
    const auto& cand = universe[p.package];
    const auto& cur = universe[*best];
    if (cand.name != cur.name) {
      if (cand.name < cur.name)
        best = p.package;
    } else if (compare_versions(cand.version, cur.version) > 0) {
      best = p.package;
    }
  }
  return best;
}

AnalysisReport check_installability(const PackageUniverse& universe,
                                    std::string_view root, bool with_recommends) {
  auto root_idx = universe.newest(root);
  if (!root_idx)
    throw Error(ErrorCode::UnknownRoot,
                "unknown root package '" + std::string(root) + "'");

  std::vector<RelationKind> kinds{RelationKind::PreDepends, RelationKind::Depends};
  if (with_recommends)
    kinds.push_back(RelationKind::Recommends);

  AnalysisReport report;
  std::vector<std::size_t> closure{*root_idx};
  std::set<std::size_t> in_closure{*root_idx};
  std::vector<std::pair<std::size_t, std::size_t>> pre_edges;

  for (std::size_t head = 0; head < closure.size(); ++head) {
    std::size_t pkg = closure[head];
    const PackageMeta& meta = universe[pkg];
    for (RelationKind kind : kinds) {
      const RelationExpr* expr = meta.relation(kind);
      if (expr == nullptr)
        continue;
      for (const auto& group : expr->groups) {
        std::optional<std::size_t> chosen;
        for (const auto& atom : group)
          if ((chosen = resolve_atom(universe, atom)))
            break;
        if (!chosen) {
          report.missing.push_back(MissingDependency{meta.name, render_group(group)});
          continue;
        }
        if (kind == RelationKind::PreDepends)
          pre_edges.emplace_back(pkg, *chosen);
        if (in_closure.insert(*chosen).second)
          closure.push_back(*chosen);
      }
    }
  }

  for (std::size_t pkg : closure) {
    const PackageMeta& meta = universe[pkg];
    const RelationExpr* conflicts = meta.relation(RelationKind::Conflicts);
    if (conflicts == nullptr)
      continue;
    for (const auto& group : conflicts->groups) {
      for (const auto& atom : group) {
        if (atom.name == meta.name)
          continue;
        for (std::size_t other : closure) {
          if (other == pkg)
            continue;
          const PackageMeta& target = universe[other];
          bool hit = target.name == atom.name &&
                     atom_matches_version(atom, target.version);
          if (!hit) {
            for (const auto& p : universe.providers_of(atom.name))
              if (p.package == other && provider_matches(atom, p))
                hit = true;
          }
          if (hit)
            report.conflicts.push_back(
                ConflictEntry{meta.name, target.name, render_atom(atom)});
        }
      }
    }
  }

  // Pre-Depends cycles among the chosen packages.
  std::map<std::size_t, std::size_t> local;
  std::vector<std::string> names;
  for (std::size_t pkg : closure) {
    local.emplace(pkg, names.size());
    names.push_back(universe[pkg].name);
  }
  cycles::Adjacency adj(names.size());
  for (auto [from, to] : pre_edges)
    adj[local.at(from)].push_back(local.at(to));
  report.predepends_cycles =
      cycles::canonical_cycles(cycles::elementary_circuits(adj), names);

  for (std::size_t pkg : closure)
    report.closure.push_back(universe[pkg].name);

  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(report.closure);
  sort_unique(report.missing);
  sort_unique(report.conflicts);
  return report;
}

} // namespace debgraph
