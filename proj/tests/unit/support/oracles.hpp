#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Graph type, so agreement between the two is evidence.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_set>
#include <vector>

#include "minorfree/graph.hpp"

namespace oracle {

using minorfree::Edge;
using minorfree::Graph;
using minorfree::Vertex;

/// Labelled simple graph on at most 8 vertices as an adjacency-bit key.
struct Small {
  int n = 0;
  std::uint64_t bits = 0;  // bit (i*8+j) for i<j

  bool has(int i, int j) const {
    if (i > j) std::swap(i, j);
    return bits >> (i * 8 + j) & 1;
  }
  void set(int i, int j) {
    if (i > j) std::swap(i, j);
    bits |= std::uint64_t{1} << (i * 8 + j);
  }
  int edges() const { return std::popcount(bits); }
  std::uint64_t key() const { return bits << 4 | static_cast<std::uint64_t>(n); }
};

inline Small to_small(const Graph& g) {
  Small s;
  s.n = g.size();
  for (const Edge& e : g.edges()) s.set(e.lo, e.hi);
  return s;
}

inline Small drop_vertex(const Small& g, int x) {
  Small out;
  out.n = g.n - 1;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (i != x && j != x && g.has(i, j)) out.set(i - (i > x), j - (j > x));
  return out;
}

inline Small contract(const Small& g, int keep, int gone) {
  Small merged = g;
  for (int w = 0; w < g.n; ++w)
    if (w != keep && w != gone && g.has(gone, w)) merged.set(keep, w);
  return drop_vertex(merged, gone);
}

inline bool isomorphic(const Small& a, const Small& b) {
  if (a.n != b.n || a.edges() != b.edges()) return false;
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.n && ok; ++i)
      for (int j = i + 1; j < a.n && ok; ++j)
        if (a.has(i, j) != b.has(perm[i], perm[j])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Is `h` a minor of `g`? Explores every sequence of vertex deletions, edge
/// deletions and edge contractions (hosts up to 8 vertices).
inline bool has_minor_by_sequences(const Graph& g, const Graph& h) {
  Small target = to_small(h);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Small> stack{to_small(g)};
  while (!stack.empty()) {
    Small cur = stack.back();
    stack.pop_back();
    if (cur.n < target.n || cur.edges() < target.edges()) continue;
    if (!seen.insert(cur.key()).second) continue;
    if (cur.n == target.n && cur.edges() == target.edges()) {
      if (isomorphic(cur, target)) return true;
      continue;
    }
    for (int x = 0; x < cur.n; ++x) stack.push_back(drop_vertex(cur, x));
    for (int i = 0; i < cur.n; ++i)
      for (int j = i + 1; j < cur.n; ++j)
        if (cur.has(i, j)) {
          Small del = cur;
          del.bits &= ~(std::uint64_t{1} << (i * 8 + j));
          stack.push_back(del);
          stack.push_back(contract(cur, i, j));
        }
  }
  return false;
}

inline Graph random_graph(Vertex n, int delta, double p, std::mt19937_64& rng) {
  std::vector<Edge> e;
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (deg[u] < delta && deg[v] < delta && coin(rng)) {
        e.emplace_back(u, v);
        ++deg[u];
        ++deg[v];
      }
  return Graph::from_edges(n, std::max(delta, 1), e);
}

inline Graph random_connected_graph(Vertex n, int delta, int extra, std::mt19937_64& rng) {
  // Random tree (attach to a random earlier vertex with spare degree), then extra edges.
  std::vector<Edge> e;
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (Vertex v = 1; v < n; ++v) {
    std::vector<Vertex> ok;
    for (Vertex u = 0; u < v; ++u)
      if (deg[u] < delta) ok.push_back(u);
    Vertex u = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
    e.emplace_back(u, v);
    ++deg[u];
    ++deg[v];
  }
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  for (int tries = 0; tries < extra * 10 && extra > 0; ++tries) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || deg[u] >= delta || deg[v] >= delta) continue;
    if (std::find(e.begin(), e.end(), Edge(u, v)) != e.end()) continue;
    e.emplace_back(u, v);
    ++deg[u];
    ++deg[v];
    if (--extra == 0) break;
  }
  return Graph::from_edges(n, std::max(delta, 1), e);
}

/// Maximum bipartite matching size by unit-capacity max-flow (Edmonds–Karp).
inline int max_matching_by_flow(int left, int right, const std::vector<std::pair<int, int>>& adj) {
  const int s = left + right, t = s + 1, n = t + 1;
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (int i = 0; i < left; ++i) cap[s][i] = 1;
  for (int j = 0; j < right; ++j) cap[left + j][t] = 1;
  for (auto [i, j] : adj) cap[i][left + j] = 1;
  int flow = 0;
  while (true) {
    std::vector<int> prev(n, -1);
    prev[s] = s;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && prev[t] < 0) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < n; ++y)
        if (prev[y] < 0 && cap[x][y] > 0) {
          prev[y] = x;
          q.push(y);
        }
    }
    if (prev[t] < 0) return flow;
    for (int y = t; y != s; y = prev[y]) {
      --cap[prev[y]][y];
      ++cap[y][prev[y]];
    }
    ++flow;
  }
}

/// Longest monotone (non-strict) subsequence length by trying every subset.
inline int longest_monotone_exhaustive(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(seq[i]);
    if (std::is_sorted(sub.begin(), sub.end()) ||
        std::is_sorted(sub.begin(), sub.end(), std::greater<>()))
      best = std::max(best, static_cast<int>(sub.size()));
  }
  return best;
}

/// Whole-graph reference for the partition, computed from its definitions:
/// full BFS from every center, exact subtree sizes, and leader election over
/// all of G[R] (not only the ell-ball).
struct ReferencePartition {
  std::vector<char> remote;
  std::vector<Vertex> center;  // -1 when remote
  std::vector<Vertex> root;    // cluster root (core) or leader (remote)
  std::vector<int> kind;       // 0 whole cell, 1 singleton, 2 subtree, 3 remote
};

inline ReferencePartition reference_partition(const Graph& g, const std::vector<Vertex>& centers,
                                              int ell, double t,
                                              const std::function<double(Vertex)>& clock) {
  const Vertex n = g.size();
  ReferencePartition out;
  out.remote.assign(n, 0);
  out.center.assign(n, -1);
  out.root.assign(n, -1);
  out.kind.assign(n, -1);
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> best(n, inf);
  std::vector<Vertex> parent(n, -1);
  for (Vertex c : centers) {  // ascending, so ties keep the smaller center
    std::vector<int> d(n, -1);
    std::vector<Vertex> par(n, -1);
    std::vector<Vertex> order{c};
    d[c] = 0;
    par[c] = c;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (Vertex w : g.neighbors(order[h]))
        if (d[w] < 0) {
          d[w] = d[order[h]] + 1;
          par[w] = order[h];
          order.push_back(w);
        }
    for (Vertex v = 0; v < n; ++v)
      if (d[v] >= 0 && d[v] <= ell && d[v] < best[v]) {
        best[v] = d[v];
        out.center[v] = c;
        parent[v] = par[v];
      }
  }
  for (Vertex v = 0; v < n; ++v) out.remote[v] = out.center[v] < 0;
  // Exact subtree sizes per cell: deeper vertices first.
  std::vector<Vertex> by_depth;
  for (Vertex v = 0; v < n; ++v)
    if (!out.remote[v]) by_depth.push_back(v);
  std::sort(by_depth.begin(), by_depth.end(),
            [&](Vertex a, Vertex b) { return best[a] > best[b]; });
  std::vector<std::size_t> size(n, 1), cell(n, 0);
  for (Vertex v : by_depth)
    if (parent[v] != v) size[parent[v]] += size[v];
  for (Vertex v : by_depth) ++cell[out.center[v]];
  for (Vertex v : by_depth) {
    if (static_cast<double>(cell[out.center[v]]) <= t) {
      out.kind[v] = 0;
      out.root[v] = out.center[v];
    } else if (static_cast<double>(size[v]) >= t) {
      out.kind[v] = 1;
      out.root[v] = v;
    } else {
      Vertex u = v;
      while (static_cast<double>(size[parent[u]]) < t) u = parent[u];
      out.kind[v] = 2;
      out.root[v] = u;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!out.remote[v]) continue;
    std::vector<int> d(n, -1);
    std::vector<Vertex> order{v};
    d[v] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (Vertex w : g.neighbors(order[h]))
        if (out.remote[w] && d[w] < 0) {
          d[w] = d[order[h]] + 1;
          order.push_back(w);
        }
    double top = -std::numeric_limits<double>::infinity();
    Vertex leader = -1;
    for (Vertex u : order) {
      double m = clock(u) - d[u];
      if (m > top || (m == top && u < leader)) {
        top = m;
        leader = u;
      }
    }
    out.kind[v] = 3;
    out.root[v] = leader;
  }
  return out;
}

}  // namespace oracle
