#include "cycles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace debgraph::cycles {

namespace {

// Strongly connected component containing start, restricted to vertices
// >= start (Tarjan).
std::vector<bool> component_of(const Adjacency& adj, std::size_t start) {
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false), in_component(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (w < start)
        continue;
      if (index[w] == unvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      bool mine = false;
      std::vector<std::size_t> members;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        members.push_back(w);
        mine = mine || w == start;
      } while (w != v);
      if (mine)
        for (std::size_t m : members)
          in_component[m] = true;
    }
  };
  visit(start);
  return in_component;
}

class Johnson {
public:
  explicit Johnson(const Adjacency& adj) : adj_(adj) {
    for (auto& out : adj_) {
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = adj_.size();
    for (start_ = 0; start_ < n; ++start_) {
      scc_ = component_of(adj_, start_);
      blocked_.assign(n, false);
      blocked_by_.assign(n, {});
      circuit(start_);
    }
    return std::move(out_);
  }

private:
  bool circuit(std::size_t v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (std::size_t w : adj_[v]) {
      if (w < start_ || !scc_[w])
        continue;
      if (w == start_) {
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (std::size_t w : adj_[v])
        if (w >= start_ && scc_[w])
          blocked_by_[w].insert(v);
    }
    path_.pop_back();
    return found;
  }

  void unblock(std::size_t u) {
    blocked_[u] = false;
    auto waiting = std::move(blocked_by_[u]);
    blocked_by_[u].clear();
    for (std::size_t w : waiting)
      if (blocked_[w])
        unblock(w);
  }

  Adjacency adj_;
  std::size_t start_ = 0;
  std::vector<bool> scc_;
  std::vector<bool> blocked_;
  std::vector<std::set<std::size_t>> blocked_by_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> out_;
};

} // namespace

std::vector<std::vector<std::size_t>> elementary_circuits(const Adjacency& adj) {
  return Johnson(adj).run();
}

std::vector<std::string> canonical_rotation(std::vector<std::string> cycle) {
  if (cycle.empty())
    return cycle;
  std::vector<std::string> best = cycle;
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    if (cycle < best)
      best = cycle;
  }
  return best;
}

std::vector<std::vector<std::string>>
canonical_cycles(const std::vector<std::vector<std::size_t>>& circuits,
                 const std::vector<std::string>& names) {
  std::vector<std::vector<std::string>> out;
  out.reserve(circuits.size());
  for (const auto& c : circuits) {
    std::vector<std::string> named;
    named.reserve(c.size());
    for (std::size_t v : c)
      named.push_back(names[v]);
    out.push_back(canonical_rotation(std::move(named)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace debgraph::cycles
