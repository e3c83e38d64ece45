#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minorfree {

using Vertex = std::int32_t;

/// Undirected edge stored as (min endpoint, max endpoint). The defaulted
/// ordering is the lexicographic edge rank used for all tie-breaking.
struct Edge {
  Vertex lo = 0;
  Vertex hi = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : lo(std::min(a, b)), hi(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;

  Vertex other(Vertex x) const { return x == lo ? hi : lo; }
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '{' << e.lo << ',' << e.hi << '}';
}

/// Simple undirected graph with a degree bound. Adjacency is kept in
/// fixed-size slot rows of width `delta`, each row sorted ascending and packed
/// (all empty slots after the last neighbor).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list; throws std::invalid_argument on
  /// self-loops, duplicate edges, out-of-range ids or degree overflow.
  static Graph from_edges(Vertex n, int delta, std::span<const Edge> edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (delta < 0) throw std::invalid_argument("negative degree bound");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : edges) {
      if (e.lo < 0 || e.hi >= n)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.lo == e.hi) throw std::invalid_argument("self-loop");
      adj[e.lo].push_back(e.hi);
      adj[e.hi].push_back(e.lo);
    }
    return from_adjacency(delta, std::move(adj));
  }

  static Graph from_edges(Vertex n, int delta, std::initializer_list<Edge> edges) {
    return from_edges(n, delta, std::span<const Edge>(edges.begin(), edges.size()));
  }

  /// Same as from_edges, with the degree bound set to the maximum degree
  /// (at least 1 so that the slot model stays non-degenerate).
  static Graph from_edges_auto(Vertex n, std::span<const Edge> edges) {
    std::vector<int> deg(static_cast<std::size_t>(std::max<Vertex>(n, 0)), 0);
    for (const Edge& e : edges) {
      if (e.lo >= 0 && e.hi < n) {
        ++deg[e.lo];
        ++deg[e.hi];
      }
    }
    int delta = 1;
    for (int d : deg) delta = std::max(delta, d);
    return from_edges(n, delta, edges);
  }

  static Graph from_edges_auto(Vertex n, std::initializer_list<Edge> edges) {
    return from_edges_auto(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  Vertex size() const { return n_; }
  int delta() const { return delta_; }

  /// Slot read without accounting; the tester goes through QueryOracle.
  std::optional<Vertex> slot(Vertex v, int i) const {
    Vertex x = slots_[static_cast<std::size_t>(v) * delta_ + i];
    if (x < 0) return std::nullopt;
    return x;
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {slots_.data() + static_cast<std::size_t>(v) * delta_,
            static_cast<std::size_t>(degree_[v])};
  }

  int degree(Vertex v) const { return degree_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::size_t edge_count() const { return edge_count_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex w : neighbors(u))
        if (u < w) out.emplace_back(u, w);
    return out;
  }

  int max_degree() const {
    int m = 0;
    for (int d : degree_) m = std::max(m, d);
    return m;
  }

  /// Full scan of the symmetry / simplicity / degree invariants.
  bool check_invariants() const {
    for (Vertex v = 0; v < n_; ++v) {
      auto nb = neighbors(v);
      if (static_cast<int>(nb.size()) > delta_) return false;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] == v || nb[i] < 0 || nb[i] >= n_) return false;
        if (i > 0 && nb[i - 1] >= nb[i]) return false;
        if (!has_edge(nb[i], v)) return false;
      }
      for (int i = degree_[v]; i < delta_; ++i)
        if (slot(v, i)) return false;
    }
    return true;
  }

  /// Copy with a larger degree bound (slot rows widened with sentinels).
  Graph with_delta(int delta) const {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      auto nb = neighbors(v);
      adj[v].assign(nb.begin(), nb.end());
    }
    return from_adjacency(delta, std::move(adj));
  }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && delta_ == o.delta_ && slots_ == o.slots_;
  }

 private:
  static Graph from_adjacency(int delta, std::vector<std::vector<Vertex>> adj) {
    Graph g;
    g.n_ = static_cast<Vertex>(adj.size());
    g.delta_ = delta;
    g.slots_.assign(adj.size() * static_cast<std::size_t>(delta), -1);
    g.degree_.assign(adj.size(), 0);
    std::size_t twice = 0;
    for (Vertex v = 0; v < g.n_; ++v) {
      auto& nb = adj[v];
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
        throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
      if (static_cast<int>(nb.size()) > delta)
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " exceeds degree bound " + std::to_string(delta));
      std::copy(nb.begin(), nb.end(),
                g.slots_.begin() + static_cast<std::ptrdiff_t>(v) * delta);
      g.degree_[v] = static_cast<int>(nb.size());
      twice += nb.size();
    }
    g.edge_count_ = twice / 2;
    return g;
  }

  Vertex n_ = 0;
  int delta_ = 0;
  std::vector<Vertex> slots_;
  std::vector<int> degree_;
  std::size_t edge_count_ = 0;
};

/// Induced subgraph together with the map from local ids back to host ids.
/// Local ids follow ascending host ids, so relative order (and edge rank) is
/// preserved.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_host;

  std::optional<Vertex> to_local(Vertex host) const {
    auto it = std::lower_bound(to_host.begin(), to_host.end(), host);
    if (it == to_host.end() || *it != host) return std::nullopt;
    return static_cast<Vertex>(it - to_host.begin());
  }
};

inline Subgraph induced_subgraph(const Graph& g, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Subgraph out;
  out.to_host = std::move(vertices);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < static_cast<Vertex>(out.to_host.size()); ++i) {
    for (Vertex w : g.neighbors(out.to_host[i])) {
      if (w <= out.to_host[i]) continue;
      if (auto j = out.to_local(w)) edges.emplace_back(i, *j);
    }
  }
  out.graph = Graph::from_edges(static_cast<Vertex>(out.to_host.size()),
                                std::max(g.delta(), 1), edges);
  return out;
}

/// Whether the vertex set induces a connected subgraph (empty set: false).
inline bool is_connected_set(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) return false;
  std::vector<Vertex> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  auto inside = [&](Vertex x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
  std::vector<Vertex> stack{sorted.front()};
  std::vector<char> seen(sorted.size(), 0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(x)) {
      if (!inside(w)) continue;
      auto idx = std::lower_bound(sorted.begin(), sorted.end(), w) - sorted.begin();
      if (!seen[idx]) {
        seen[idx] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == sorted.size();
}

inline bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  std::vector<Vertex> all(static_cast<std::size_t>(g.size()));
  for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
  return is_connected_set(g, all);
}

/// Hop distances from `source` inside G[set] (set given as membership mask);
/// -1 for unreachable.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source,
                                      const std::vector<char>* mask = nullptr) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (Vertex w : g.neighbors(x)) {
      if (dist[w] >= 0 || (mask && !(*mask)[w])) continue;
      dist[w] = dist[x] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

/// Connected components as lists of ascending vertex ids.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.size()), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      out[id].push_back(x);
      for (Vertex w : g.neighbors(x))
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text formats

/// Reads "n delta" followed by one "u v" edge per line. '#' starts a comment.
inline Graph read_graph(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw std::invalid_argument("missing graph header");
  std::istringstream header(line);
  long long n = -1, delta = -1;
  if (!(header >> n >> delta) || n < 0 || delta < 0)
    throw std::invalid_argument("malformed graph header: " + line);
  std::vector<Edge> edges;
  while (next_line(line)) {
    std::istringstream row(line);
    long long u, v;
    if (!(row >> u >> v)) throw std::invalid_argument("malformed edge line: " + line);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range: " + line);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(static_cast<Vertex>(n), static_cast<int>(delta), edges);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.delta() << '\n';
  for (const Edge& e : g.edges()) out << e.lo << ' ' << e.hi << '\n';
}

/// DOT export; `color_class[v]` >= 0 paints v with a palette color.
inline std::string to_dot(const Graph& g, std::span<const int> color_class = {}) {
  static constexpr const char* kPalette[] = {"red",   "blue",   "green3", "orange",
                                             "purple", "cyan3", "gold",   "magenta",
                                             "brown", "gray40"};
  std::ostringstream os;
  os << "graph G {\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    os << "  " << v;
    if (static_cast<std::size_t>(v) < color_class.size() && color_class[v] >= 0)
      os << " [style=filled, fillcolor=" << kPalette[color_class[v] % 10] << "]";
    os << ";\n";
  }
  for (const Edge& e : g.edges()) os << "  " << e.lo << " -- " << e.hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace minorfree
