#pragma once

// Exact polynomial-time membership tests for the minor-closed classes the
// tester is used with (forests, cacti, series-parallel, outerplanar graphs),
// and witness extraction from any monotone "contains a forbidden minor"
// predicate by greedy deletion and contraction.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "minorfree/graph.hpp"
#include "minorfree/minor.hpp"

namespace minorfree {

inline bool is_forest(const Graph& g) {
  auto comps = connected_components(g);
  return g.edge_count() + comps.size() == static_cast<std::size_t>(g.size());
}

/// Every block is a single edge or a cycle (equivalently: no diamond minor).
inline bool is_cactus(const Graph& g) {
  for (const auto& block : detail::biconnected_blocks(g)) {
    if (block.size() < 3) continue;
    std::size_t edges = 0;
    for (Vertex v : block)
      for (Vertex w : g.neighbors(v))
        if (v < w && std::binary_search(block.begin(), block.end(), w)) ++edges;
    if (edges != block.size()) return false;
  }
  return true;
}

/// Treewidth at most two (equivalently: no K4 minor), by repeatedly deleting
/// vertices of degree <= 1 and suppressing vertices of degree 2.
inline bool is_series_parallel(const Graph& g) {
  const Vertex n = g.size();
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> work;
  for (Vertex v = 0; v < n; ++v)
    if (adj[v].size() <= 2) work.push_back(v);
  Vertex remaining = n;
  while (!work.empty()) {
    Vertex v = work.back();
    work.pop_back();
    if (gone[v] || adj[v].size() > 2) continue;
    gone[v] = 1;
    --remaining;
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    for (Vertex w : nb) adj[w].erase(v);
    if (nb.size() == 2) {
      adj[nb[0]].insert(nb[1]);
      adj[nb[1]].insert(nb[0]);
    }
    adj[v].clear();
    for (Vertex w : nb)
      if (adj[w].size() <= 2) work.push_back(w);
  }
  return remaining == 0;
}

/// Outerplanar iff the graph plus a universal apex vertex is planar.
inline bool is_outerplanar(const Graph& g) {
  const Vertex n = g.size();
  if (n <= 3) return true;
  if (g.edge_count() > static_cast<std::size_t>(2 * n - 3)) return false;
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(static_cast<std::size_t>(n) + 1);
  for (const Edge& e : g.edges()) boost::add_edge(e.lo, e.hi, bg);
  for (Vertex v = 0; v < n; ++v) boost::add_edge(v, n, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

/// Small mutable simple graph whose vertices carry the host vertices merged
/// into them.
class ContractibleGraph {
 public:
  explicit ContractibleGraph(const Graph& g) : adj_(static_cast<std::size_t>(g.size())) {
    members_.resize(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) {
      adj_[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
      members_[v] = {v};
    }
  }

  Graph to_graph(std::vector<Vertex>* ids = nullptr) const {
    std::vector<Vertex> local(adj_.size(), -1);
    Vertex n = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (alive(static_cast<Vertex>(v))) {
        local[v] = n++;
        if (ids) ids->push_back(static_cast<Vertex>(v));
      }
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (alive(static_cast<Vertex>(v)))
        for (Vertex w : adj_[v])
          if (static_cast<Vertex>(v) < w) edges.emplace_back(local[v], local[w]);
    return Graph::from_edges_auto(n, edges);
  }

  bool alive(Vertex v) const { return !members_[v].empty(); }
  const std::set<Vertex>& adj(Vertex v) const { return adj_[v]; }
  const std::vector<Vertex>& members(Vertex v) const { return members_[v]; }
  std::size_t slots() const { return adj_.size(); }

  void remove_edge(Vertex u, Vertex v) {
    adj_[u].erase(v);
    adj_[v].erase(u);
  }
  void add_edge(Vertex u, Vertex v) {
    adj_[u].insert(v);
    adj_[v].insert(u);
  }
  void remove_vertex(Vertex v) {
    for (Vertex w : adj_[v]) adj_[w].erase(v);
    adj_[v].clear();
    members_[v].clear();
  }
  /// Contracts edge {keep, gone}; returns the neighbors newly given to keep.
  std::vector<Vertex> contract(Vertex keep, Vertex gone) {
    std::vector<Vertex> added;
    for (Vertex w : adj_[gone]) {
      if (w == keep) continue;
      adj_[w].erase(gone);
      if (adj_[keep].insert(w).second) {
        adj_[w].insert(keep);
        added.push_back(w);
      }
    }
    adj_[keep].erase(gone);
    adj_[gone].clear();
    members_[keep].insert(members_[keep].end(), members_[gone].begin(), members_[gone].end());
    members_[gone].clear();
    return added;
  }

 private:
  std::vector<std::set<Vertex>> adj_;
  std::vector<std::vector<Vertex>> members_;
};

/// Shrinks `host` (for which `contains` holds) to a minimal minor for which it
/// still holds, tracking merged host vertices. Returns the minimal graph and
/// the host vertex sets behind its vertices.
inline std::pair<Graph, std::vector<std::vector<Vertex>>> minimize_minor(
    const Graph& host, const std::function<bool(const Graph&)>& contains) {
  ContractibleGraph cg(host);
  // Delete edges, halving batches that cannot go as a whole.
  std::vector<Edge> edges = host.edges();
  std::function<void(std::size_t, std::size_t)> prune = [&](std::size_t lo, std::size_t hi) {
    if (lo >= hi) return;
    for (std::size_t i = lo; i < hi; ++i) cg.remove_edge(edges[i].lo, edges[i].hi);
    if (contains(cg.to_graph())) return;
    for (std::size_t i = lo; i < hi; ++i) cg.add_edge(edges[i].lo, edges[i].hi);
    if (hi - lo == 1) return;
    std::size_t mid = lo + (hi - lo) / 2;
    prune(lo, mid);
    prune(mid, hi);
  };
  prune(0, edges.size());
  {
    ContractibleGraph trimmed = cg;
    for (Vertex v = 0; v < host.size(); ++v)
      if (trimmed.adj(v).empty()) trimmed.remove_vertex(v);
    // Templates with isolated vertices need some of them kept.
    if (contains(trimmed.to_graph())) cg = std::move(trimmed);
  }
  // Contract while the property survives.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < static_cast<Vertex>(cg.slots()); ++v) {
      if (!cg.alive(v)) continue;
      std::vector<Vertex> nb(cg.adj(v).begin(), cg.adj(v).end());
      for (Vertex w : nb) {
        ContractibleGraph trial = cg;
        trial.contract(std::min(v, w), std::max(v, w));
        if (contains(trial.to_graph())) {
          cg = std::move(trial);
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<Vertex> ids;
  Graph out = cg.to_graph(&ids);
  std::vector<std::vector<Vertex>> sets;
  for (Vertex id : ids) sets.push_back(cg.members(id));
  return {std::move(out), std::move(sets)};
}

}  // namespace minorfree
