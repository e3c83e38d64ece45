#pragma once

// Instance generators for experiments: minor-free inputs with a structural
// guarantee by construction, and planted far inputs with a certified lower
// bound on their distance from the family.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minorfree/family.hpp"
#include "minorfree/graph.hpp"
#include "minorfree/minor.hpp"

namespace minorfree {

using Rng = std::mt19937_64;

namespace detail {

inline Graph relabeled(Vertex n, int delta, const std::vector<Edge>& edges, Rng& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(perm[e.lo], perm[e.hi]);
  return Graph::from_edges(n, delta, out);
}

template <class T>
T pick(const std::vector<T>& v, Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace detail

inline Graph gen_empty(Vertex n, int delta_cap) {
  if (n < 1 || delta_cap < 1) throw std::invalid_argument("empty graph needs n >= 1, delta >= 1");
  return Graph::from_edges(n, delta_cap, {});
}

/// Random maximal outerplanar graph (a random ear-cutting triangulation of an
/// n-gon), thinned by deleting chords at overfull vertices, randomly relabeled.
/// The polygon cycle is never touched, so the result is connected.
inline Graph gen_outerplanar(Vertex n, int delta_cap, Rng& rng) {
  if (n < 3) throw std::invalid_argument("outerplanar generator needs n >= 3");
  if (delta_cap < 2) throw std::invalid_argument("outerplanar generator needs delta >= 2");
  std::vector<Edge> cycle, chords;
  for (Vertex v = 0; v < n; ++v) cycle.emplace_back(v, (v + 1) % n);
  std::vector<Vertex> prev(static_cast<std::size_t>(n)), next(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    prev[v] = (v + n - 1) % n;
    next[v] = (v + 1) % n;
  }
  std::vector<Vertex> alive(static_cast<std::size_t>(n));
  std::iota(alive.begin(), alive.end(), 0);
  while (alive.size() > 3) {
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, alive.size() - 1)(rng);
    Vertex ear = alive[i];
    alive[i] = alive.back();
    alive.pop_back();
    Vertex a = prev[ear], b = next[ear];
    chords.emplace_back(a, b);
    next[a] = b;
    prev[b] = a;
  }
  std::vector<int> deg(static_cast<std::size_t>(n), 2);
  for (const Edge& e : chords) {
    ++deg[e.lo];
    ++deg[e.hi];
  }
  std::shuffle(chords.begin(), chords.end(), rng);
  std::vector<Edge> edges = cycle;
  for (const Edge& e : chords) {
    if (deg[e.lo] > delta_cap || deg[e.hi] > delta_cap) {
      --deg[e.lo];
      --deg[e.hi];
    } else {
      edges.push_back(e);
    }
  }
  return detail::relabeled(n, delta_cap, edges, rng);
}

/// Random cactus: grows from one vertex by hanging either a pendant edge or a
/// fresh cycle (3 to 8 vertices) on an existing vertex with spare degree, so
/// every edge lies on at most one cycle. cycle_prob = 0 gives a random tree.
inline Graph gen_cactus(Vertex n, int delta_cap, Rng& rng, double cycle_prob = 0.3) {
  if (n < 1) throw std::invalid_argument("cactus generator needs n >= 1");
  if (delta_cap < 2) throw std::invalid_argument("cactus generator needs delta >= 2");
  if (!(cycle_prob >= 0 && cycle_prob <= 1))
    throw std::invalid_argument("cycle_prob must lie in [0,1]");
  std::vector<Edge> edges;
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  // Vertices that can still take a pendant edge (deg < cap) or a cycle (deg <= cap - 2).
  std::vector<Vertex> open1{0}, open2{0};
  Vertex used = 1;
  std::bernoulli_distribution want_cycle(cycle_prob);
  auto refresh = [&](std::vector<Vertex>& pool, int slack) {
    std::erase_if(pool, [&](Vertex v) { return deg[v] > delta_cap - slack; });
  };
  auto add = [&](Vertex a, Vertex b) {
    edges.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  };
  auto fresh = [&]() {
    Vertex v = used++;
    open1.push_back(v);
    open2.push_back(v);
    return v;
  };
  while (used < n) {
    refresh(open1, 1);
    refresh(open2, 2);
    const Vertex room = n - used;
    if (room >= 2 && !open2.empty() && want_cycle(rng)) {
      Vertex at = detail::pick(open2, rng);
      int len = std::uniform_int_distribution<int>(3, 8)(rng);
      len = static_cast<int>(std::min<Vertex>(len, room + 1));
      Vertex last = at;
      for (int i = 1; i < len; ++i) {
        Vertex v = fresh();
        add(last, v);
        last = v;
      }
      add(last, at);
    } else if (!open1.empty()) {
      Vertex at = detail::pick(open1, rng);
      add(at, fresh());
    } else {
      fresh();  // everything is saturated: start a new component
    }
  }
  return detail::relabeled(n, delta_cap, edges, rng);
}

/// Result of a planted construction with its farness certificate. Removing
/// the family from the graph needs at least per_copy_bound edge deletions
/// inside each planted copy, because the copies are disjoint and any
/// family-free graph reached by edits keeps a family-free subgraph reached by
/// deletions alone.
struct PlantedInstance {
  Graph graph;
  std::string gadget;          // planted graph: a family member or K_{Delta+1}
  std::size_t copies = 0;
  std::size_t copy_size = 0;
  std::size_t per_copy_bound = 0;
  bool connected = false;
  std::uint64_t modifications_bound() const { return copies * per_copy_bound; }
  /// Certified lower bound on the distance, as a fraction of n * Delta.
  double farness_bound() const {
    return static_cast<double>(modifications_bound()) /
           (static_cast<double>(graph.size()) * graph.delta());
  }
  std::string certificate() const {
    std::ostringstream os;
    os << copies << " disjoint copies of " << gadget << " (" << copy_size
       << " vertices each), each needing >= " << per_copy_bound << " deletions: >= "
       << modifications_bound() << " modifications, farness >= " << farness_bound();
    return os.str();
  }
};

/// Fewest edge deletions that make K_m free of the family, by exhaustive
/// search over edge subsets (m <= 6).
inline std::size_t complete_graph_deletion_bound(const ForbiddenFamily& family, int m) {
  if (m < 2 || m > 6) throw std::invalid_argument("gadget size must lie in [2,6]");
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::size_t> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(family.name, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Edge> all;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = a + 1; b < m; ++b) all.emplace_back(a, b);
  const std::size_t e = all.size();
  FamilyChecker checker(family);
  std::size_t best_free = 0;  // most edges any family-free spanning subgraph keeps
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    auto kept = static_cast<std::size_t>(std::popcount(mask));
    if (kept <= best_free) continue;
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < e; ++i)
      if (mask >> i & 1u) sub.push_back(all[i]);
    if (!checker.contains_any(Graph::from_edges(m, m, sub))) best_free = kept;
  }
  return cache[key] = e - best_free;
}

/// ceil(eps * n * Delta) planted copies of the smallest family member that
/// fits the degree cap, padded with isolated vertices. When those copies do
/// not fit in n vertices, K_{Delta+1} gadgets are planted instead, as many as
/// the exhaustively computed per-gadget deletion bound requires. With
/// `connect_path`, copies and padding are chained into one component.
inline PlantedInstance gen_planted_far(Vertex n, int delta_cap, const ForbiddenFamily& family,
                                       double epsilon, Rng& rng, bool connect_path = false) {
  if (n < 1 || delta_cap < 1) throw std::invalid_argument("planted instance needs n, delta >= 1");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  const double need = std::ceil(epsilon * static_cast<double>(n) * delta_cap - 1e-9);

  PlantedInstance out;
  out.connected = connect_path;
  Graph unit;
  const MinorTemplate* member = nullptr;
  for (const auto& m : family.members)
    if (m.graph.max_degree() <= delta_cap &&
        (!member || m.graph.size() < member->graph.size()))
      member = &m;
  if (member && member->graph.size() <= n) {
    double copies = std::max(1.0, need);
    if (copies * member->graph.size() <= static_cast<double>(n)) {
      unit = member->graph;
      out.gadget = member->name;
      out.copies = static_cast<std::size_t>(copies);
      out.per_copy_bound = 1;
    }
  }
  if (out.copies == 0) {
    const int m = delta_cap + 1;
    if (m > 6 || m > n)
      throw std::invalid_argument("planted copies do not fit in " + std::to_string(n) +
                                  " vertices");
    std::size_t per = complete_graph_deletion_bound(family, m);
    if (per == 0)
      throw std::invalid_argument("K" + std::to_string(m) + " is free of the family");
    double copies = std::max(1.0, std::ceil(need / static_cast<double>(per) - 1e-9));
    if (copies * m > static_cast<double>(n))
      throw std::invalid_argument("planted copies do not fit in " + std::to_string(n) +
                                  " vertices");
    unit = make_complete(m).graph;
    out.gadget = "K" + std::to_string(m);
    out.copies = static_cast<std::size_t>(copies);
    out.per_copy_bound = per;
  }
  out.copy_size = static_cast<std::size_t>(unit.size());

  std::vector<Edge> edges;
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  auto add = [&](Vertex a, Vertex b) {
    edges.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  };
  for (std::size_t c = 0; c < out.copies; ++c) {
    const auto base = static_cast<Vertex>(c * out.copy_size);
    for (const Edge& e : unit.edges()) add(base + e.lo, base + e.hi);
  }
  if (connect_path) {
    // Link consecutive copies through vertices with spare degree, then hang
    // the padding off the end as a path.
    auto spare = [&](std::size_t c, Vertex avoid) -> Vertex {
      const auto base = static_cast<Vertex>(c * out.copy_size);
      for (Vertex v = base; v < base + static_cast<Vertex>(out.copy_size); ++v)
        if (v != avoid && deg[v] < delta_cap) return v;
      if (avoid >= 0 && deg[avoid] < delta_cap) return avoid;
      throw std::invalid_argument("planted " + out.gadget + " has no spare degree to connect");
    };
    Vertex tail = -1;
    for (std::size_t c = 0; c < out.copies; ++c) {
      Vertex head = spare(c, -1);
      if (c > 0) add(tail, head);
      if (c + 1 < out.copies || static_cast<Vertex>(out.copies * out.copy_size) < n)
        tail = spare(c, head);
    }
    for (auto v = static_cast<Vertex>(out.copies * out.copy_size); v < n; ++v) {
      add(tail, v);
      tail = v;
    }
  }
  out.graph = detail::relabeled(n, delta_cap, edges, rng);
  return out;
}

}  // namespace minorfree
