#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minorfree/graph.hpp"

namespace minorfree {

/// A small forbidden-minor graph with a display name.
struct MinorTemplate {
  std::string name;
  Graph graph;
};

inline MinorTemplate make_grid(int k) {
  if (k < 1) throw std::invalid_argument("grid needs k >= 1");
  // x_i = i-1, y_i = k+i-1
  std::vector<Edge> e;
  for (int i = 0; i + 1 < k; ++i) {
    e.emplace_back(i, i + 1);
    e.emplace_back(k + i, k + i + 1);
  }
  for (int i = 0; i < k; ++i) e.emplace_back(i, k + i);
  return {"grid" + std::to_string(k) + "x2", Graph::from_edges_auto(2 * k, e)};
}

inline MinorTemplate make_circus(int k) {
  if (k < 1) throw std::invalid_argument("circus needs k >= 1");
  // x = 0, y_i = i, z_i = k+i
  std::vector<Edge> e;
  for (int i = 1; i <= k; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, k + i);
  }
  for (int i = 1; i < k; ++i) e.emplace_back(k + i, k + i + 1);
  return {"circus" + std::to_string(k), Graph::from_edges_auto(2 * k + 1, e)};
}

inline MinorTemplate make_k2k(int k) {
  if (k < 1) throw std::invalid_argument("K2,k needs k >= 1");
  // sides a = 0, b = 1; c_i = i+1
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i) {
    e.emplace_back(0, 2 + i);
    e.emplace_back(1, 2 + i);
  }
  return {"K2," + std::to_string(k), Graph::from_edges_auto(k + 2, e)};
}

inline MinorTemplate make_complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return {"K" + std::to_string(n), Graph::from_edges_auto(n, e)};
}

inline MinorTemplate make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return {"C" + std::to_string(n), Graph::from_edges_auto(n, e)};
}

/// K4 minus one edge.
inline MinorTemplate make_diamond() {
  return {"diamond", Graph::from_edges_auto(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}})};
}

/// Which host edge realizes template edge {a, b}: u lies in the branch set of
/// a and v in the branch set of b.
struct EdgeWitness {
  Vertex a = 0, b = 0;
  Vertex u = 0, v = 0;
  bool operator==(const EdgeWitness&) const = default;
};

/// Branch-set model of a template inside a host graph.
struct MinorEmbedding {
  std::vector<std::vector<Vertex>> branch_sets;  // indexed by template vertex
  std::vector<EdgeWitness> edge_witnesses;       // one per template edge

  bool operator==(const MinorEmbedding&) const = default;
};

struct VerifyResult {
  bool ok = true;
  std::string condition;  // empty when ok
  std::string detail;

  explicit operator bool() const { return ok; }
  static VerifyResult fail(std::string condition, std::string detail) {
    return {false, std::move(condition), std::move(detail)};
  }
};

/// Checks disjointness, connectivity of every branch set and a valid host
/// edge for each template edge.
inline VerifyResult verify_embedding(const Graph& host, const Graph& tmpl,
                                     const MinorEmbedding& emb) {
  if (static_cast<Vertex>(emb.branch_sets.size()) != tmpl.size())
    return VerifyResult::fail("shape", "branch set count " +
                                           std::to_string(emb.branch_sets.size()) +
                                           " != template size " + std::to_string(tmpl.size()));
  std::vector<int> owner(static_cast<std::size_t>(host.size()), -1);
  for (Vertex a = 0; a < tmpl.size(); ++a) {
    const auto& bs = emb.branch_sets[a];
    if (bs.empty())
      return VerifyResult::fail("nonempty", "branch set of template vertex " +
                                                std::to_string(a) + " is empty");
    for (Vertex x : bs) {
      if (x < 0 || x >= host.size())
        return VerifyResult::fail("shape", "host vertex " + std::to_string(x) + " out of range");
      if (owner[x] >= 0)
        return VerifyResult::fail("disjointness", "host vertex " + std::to_string(x) +
                                                      " in branch sets " +
                                                      std::to_string(owner[x]) + " and " +
                                                      std::to_string(a));
      owner[x] = a;
    }
  }
  for (Vertex a = 0; a < tmpl.size(); ++a)
    if (!is_connected_set(host, emb.branch_sets[a]))
      return VerifyResult::fail("connectivity", "branch set of template vertex " +
                                                    std::to_string(a) + " is not connected");
  std::vector<char> covered(tmpl.edge_count(), 0);
  auto tedges = tmpl.edges();
  for (const auto& w : emb.edge_witnesses) {
    auto it = std::lower_bound(tedges.begin(), tedges.end(), Edge(w.a, w.b));
    if (it == tedges.end() || *it != Edge(w.a, w.b))
      return VerifyResult::fail("edge_witness", "{" + std::to_string(w.a) + "," +
                                                    std::to_string(w.b) +
                                                    "} is not a template edge");
    if (w.u < 0 || w.u >= host.size() || w.v < 0 || w.v >= host.size() ||
        owner[w.u] != w.a || owner[w.v] != w.b || !host.has_edge(w.u, w.v))
      return VerifyResult::fail("edge_witness", "witness for template edge {" +
                                                    std::to_string(w.a) + "," +
                                                    std::to_string(w.b) + "} is invalid");
    covered[it - tedges.begin()] = 1;
  }
  for (std::size_t i = 0; i < tedges.size(); ++i)
    if (!covered[i])
      return VerifyResult::fail("edge_witness", "template edge {" +
                                                    std::to_string(tedges[i].lo) + "," +
                                                    std::to_string(tedges[i].hi) +
                                                    "} has no witness");
  return {};
}

/// Fills in edge witnesses (lowest-rank host edge per template edge) for the
/// given branch sets. Returns nullopt if some template edge has none.
inline std::optional<MinorEmbedding> embedding_from_branch_sets(
    const Graph& host, const Graph& tmpl, std::vector<std::vector<Vertex>> branch_sets) {
  std::vector<int> owner(static_cast<std::size_t>(host.size()), -1);
  for (std::size_t a = 0; a < branch_sets.size(); ++a) {
    std::sort(branch_sets[a].begin(), branch_sets[a].end());
    for (Vertex x : branch_sets[a]) owner[x] = static_cast<int>(a);
  }
  MinorEmbedding emb;
  for (const Edge& te : tmpl.edges()) {
    std::optional<Edge> best;
    for (Vertex u : branch_sets[te.lo])
      for (Vertex v : host.neighbors(u))
        if (owner[v] == te.hi && (!best || Edge(u, v) < *best)) best = Edge(u, v);
    if (!best) return std::nullopt;
    Vertex u = owner[best->lo] == te.lo ? best->lo : best->hi;
    emb.edge_witnesses.push_back({te.lo, te.hi, u, best->other(u)});
  }
  emb.branch_sets = std::move(branch_sets);
  return emb;
}

/// G[P]: one vertex per part, an edge when some host edge joins two parts.
inline Graph quotient(const Graph& g, const std::vector<std::vector<Vertex>>& parts) {
  std::vector<int> owner(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (Vertex x : parts[p]) {
      if (x < 0 || x >= g.size()) throw std::invalid_argument("part vertex out of range");
      if (owner[x] >= 0) throw std::invalid_argument("parts overlap at vertex " + std::to_string(x));
      owner[x] = static_cast<int>(p);
    }
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (owner[v] < 0) throw std::invalid_argument("vertex " + std::to_string(v) + " not covered");
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (owner[e.lo] != owner[e.hi]) edges.emplace_back(owner[e.lo], owner[e.hi]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges_auto(static_cast<Vertex>(parts.size()), edges);
}

// ---------------------------------------------------------------------------
// Canonical forms for small graphs (individualization/refinement, exhaustive
// over the refined search tree; twin vertices are branched on once).

struct CanonicalForm {
  int n = 0;
  std::vector<std::uint64_t> bits;  // upper-triangle adjacency in canonical order
  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;
};

namespace detail {

inline std::vector<int> refine(const Graph& g, std::vector<int> color) {
  const int n = g.size();
  int cells = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> cnt(cells, 0);
      for (Vertex w : g.neighbors(v)) ++cnt[color[w]];
      sig[v].reserve(cells + 1);
      sig[v].push_back(color[v]);
      sig[v].insert(sig[v].end(), cnt.begin(), cnt.end());
    }
    std::vector<std::vector<int>> distinct(sig);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
                                 distinct.begin());
    int next_cells = static_cast<int>(distinct.size());
    color = std::move(next);
    if (next_cells == cells) return color;
    cells = next_cells;
  }
}

inline CanonicalForm code_of(const Graph& g, const std::vector<int>& pos) {
  const int n = g.size();
  CanonicalForm cf;
  cf.n = n;
  std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  cf.bits.assign((nbits + 63) / 64, 0);
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v) inv[pos[v]] = v;
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (g.has_edge(inv[i], inv[j])) cf.bits[k / 64] |= (std::uint64_t{1} << (k % 64));
  return cf;
}

inline bool twins(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> na, nb;
  for (Vertex x : g.neighbors(a))
    if (x != b) na.push_back(x);
  for (Vertex x : g.neighbors(b))
    if (x != a) nb.push_back(x);
  return na == nb;
}

inline void canon_search(const Graph& g, std::vector<int> color, std::optional<CanonicalForm>& best,
                         std::vector<int>* best_pos) {
  const int n = g.size();
  color = refine(g, std::move(color));
  std::vector<int> size(n, 0);
  for (int c : color) ++size[c];
  int target = -1;
  for (int c = 0; c < n; ++c)
    if (size[c] > 1) {
      target = c;
      break;
    }
  if (target < 0) {
    auto code = code_of(g, color);
    if (!best || code < *best) {
      best = code;
      if (best_pos) *best_pos = color;
    }
    return;
  }
  std::vector<Vertex> tried;
  for (Vertex v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    bool redundant = false;
    for (Vertex t : tried)
      if (twins(g, t, v)) {
        redundant = true;
        break;
      }
    if (redundant) continue;
    tried.push_back(v);
    // Individualize v: it keeps `target`, every color >= target shifts up,
    // the rest of v's cell moves to target + 1.
    std::vector<int> next(color);
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      if (next[w] >= target) ++next[w];
    }
    canon_search(g, std::move(next), best, best_pos);
  }
}

}  // namespace detail

/// Canonical form; `relabel`, when provided, receives the canonical position
/// of each vertex.
inline CanonicalForm canonical_form(const Graph& g, std::vector<int>* relabel = nullptr) {
  std::optional<CanonicalForm> best;
  if (g.size() == 0) return CanonicalForm{};
  detail::canon_search(g, std::vector<int>(static_cast<std::size_t>(g.size()), 0), best, relabel);
  return *best;
}

/// Isomorphism a -> b as a vertex map, or nullopt.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::vector<int> pa, pb;
  if (canonical_form(a, &pa) != canonical_form(b, &pb)) return std::nullopt;
  std::vector<Vertex> inv_b(static_cast<std::size_t>(b.size()));
  for (Vertex v = 0; v < b.size(); ++v) inv_b[pb[v]] = v;
  std::vector<Vertex> map(static_cast<std::size_t>(a.size()));
  for (Vertex v = 0; v < a.size(); ++v) map[v] = inv_b[pa[v]];
  return map;
}

// ---------------------------------------------------------------------------
// Brute-force minor search by branch-set enumeration.

class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  Vertex max_host_vertices = 20;      // per searched piece, after reductions
  std::uint64_t max_steps = 50'000'000;  // enumeration nodes before giving up
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }

/// Search over a host of at most 64 vertices given as neighbor masks.
class BranchSetSearch {
 public:
  BranchSetSearch(std::vector<Mask> host_adj, const Graph& tmpl, std::uint64_t max_steps)
      : adj_(std::move(host_adj)), tmpl_(tmpl), max_steps_(max_steps) {
    const int h = tmpl.size();
    // Placement order: most constrained first.
    std::vector<char> placed(h, 0);
    for (int step = 0; step < h; ++step) {
      int best = -1, best_placed = -1, best_deg = -1;
      for (int a = 0; a < h; ++a) {
        if (placed[a]) continue;
        int pn = 0;
        for (Vertex b : tmpl.neighbors(a)) pn += placed[b];
        if (pn > best_placed || (pn == best_placed && tmpl.degree(a) > best_deg)) {
          best = a;
          best_placed = pn;
          best_deg = tmpl.degree(a);
        }
      }
      placed[best] = 1;
      order_.push_back(best);
    }
    position_.assign(h, 0);
    for (int i = 0; i < h; ++i) position_[order_[i]] = i;
    // Earlier twin for symmetry breaking.
    twin_before_.assign(h, -1);
    for (int i = 0; i < h; ++i)
      for (int j = i - 1; j >= 0; --j)
        if (twins(tmpl, order_[i], order_[j])) {
          twin_before_[order_[i]] = order_[j];
          break;
        }
    sets_.assign(h, 0);
    host_n_ = static_cast<int>(adj_.size());
  }

  std::optional<std::vector<Mask>> run() {
    Mask all = host_n_ == 64 ? ~Mask{0} : (bit(host_n_) - 1);
    if (place(0, all)) return sets_;
    return std::nullopt;
  }

 private:
  Mask neighborhood(Mask s) const {
    Mask out = 0;
    for (Mask m = s; m; m &= m - 1) out |= adj_[std::countr_zero(m)];
    return out & ~s;
  }

  void tick() {
    if (++steps_ > max_steps_) throw SizeGuardExceeded("brute-force step budget exhausted");
  }

  bool feasible_after(int idx, Mask free) const {
    const int h = tmpl_.size();
    int remaining = h - idx - 1;
    if (std::popcount(free) < remaining) return false;
    for (int i = 0; i <= idx; ++i) {
      int a = order_[i];
      int unplaced = 0;
      for (Vertex b : tmpl_.neighbors(a))
        if (position_[b] > idx) ++unplaced;
      if (unplaced == 0) continue;
      if (std::popcount(neighborhood(sets_[a]) & free) < unplaced) return false;
    }
    return true;
  }

  bool place(int idx, Mask free) {
    const int h = tmpl_.size();
    if (idx == h) return true;
    const int a = order_[idx];
    // Placed neighbors constrain the new set.
    std::vector<Mask> must_touch;
    for (Vertex b : tmpl_.neighbors(a))
      if (position_[b] < idx) must_touch.push_back(neighborhood(sets_[b]) & free);
    for (Mask m : must_touch)
      if (!m) return false;
    int max_size = std::popcount(free) - (h - idx - 1);
    if (tmpl_.degree(a) <= 1) max_size = std::min(max_size, 1);
    int min_seed = -1;
    if (twin_before_[a] >= 0) min_seed = std::countr_zero(sets_[twin_before_[a]]);
    // Seeds: the minimum vertex of the new set. When a neighbor is placed the
    // seed is the minimum vertex among those touching its set, and vertices of
    // that touching set below the seed are excluded.
    Mask seed_pool = must_touch.empty() ? free : must_touch.front();
    Mask excluded = 0;
    for (Mask m = seed_pool; m; m &= m - 1) {
      int s = std::countr_zero(m);
      Mask seed = bit(s);
      if (must_touch.empty()) {
        // s is the minimum of the set: exclude smaller vertices.
        excluded = free & (seed - 1);
      }
      if (!must_touch.empty() || s > min_seed) {
        Mask allowed = free & ~excluded;
        if (grow(idx, a, seed, adj_[s] & allowed & ~seed, allowed, max_size, must_touch, free,
                 min_seed))
          return true;
      }
      if (!must_touch.empty()) excluded |= seed;
    }
    return false;
  }

  bool grow(int idx, int a, Mask set, Mask frontier, Mask allowed, int max_size,
            const std::vector<Mask>& must_touch, Mask free, int min_seed) {
    tick();
    bool touches = true;
    for (Mask m : must_touch)
      if (!(m & set)) {
        touches = false;
        break;
      }
    if (touches && (min_seed < 0 || std::countr_zero(set) > min_seed)) {
      sets_[a] = set;
      if (feasible_after(idx, free & ~set) && place(idx + 1, free & ~set)) return true;
      sets_[a] = 0;
    }
    if (std::popcount(set) >= max_size) return false;
    Mask rem = frontier;
    Mask blocked = 0;
    while (rem) {
      int v = std::countr_zero(rem);
      rem &= rem - 1;
      Mask next_front = (rem | (adj_[v] & allowed)) & ~set & ~bit(v) & ~blocked;
      if (grow(idx, a, set | bit(v), next_front, allowed & ~blocked, max_size, must_touch, free,
               min_seed))
        return true;
      blocked |= bit(v);
    }
    return false;
  }

  std::vector<Mask> adj_;
  const Graph& tmpl_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  int host_n_ = 0;
  std::vector<int> order_, position_, twin_before_;
  std::vector<Mask> sets_;
};

inline bool is_biconnected_template(const Graph& t) {
  if (t.size() < 3 || !is_connected(t)) return false;
  for (Vertex x = 0; x < t.size(); ++x) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < t.size(); ++v)
      if (v != x) rest.push_back(v);
    if (!is_connected_set(t, rest)) return false;
  }
  return true;
}

/// Biconnected components as vertex lists (Hopcroft–Tarjan, iterative).
inline std::vector<std::vector<Vertex>> biconnected_blocks(const Graph& g) {
  const Vertex n = g.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::vector<Vertex>> blocks;
  std::vector<Edge> estack;
  int timer = 0;
  struct Frame {
    Vertex v, parent;
    int next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    if (g.degree(root) == 0) {
      blocks.push_back({root});
      disc[root] = timer++;
      continue;
    }
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < static_cast<int>(nb.size())) {
        Vertex w = nb[f.next++];
        if (disc[w] < 0) {
          estack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent && disc[w] < disc[f.v]) {
          estack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Vertex v = f.v, p = f.parent;
      stack.pop_back();
      if (p < 0) continue;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        std::vector<Vertex> block;
        while (true) {
          Edge e = estack.back();
          estack.pop_back();
          block.push_back(e.lo);
          block.push_back(e.hi);
          if (e == Edge(p, v)) break;
        }
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        blocks.push_back(std::move(block));
      }
    }
  }
  return blocks;
}

}  // namespace detail

/// Exhaustive minor search. Returns a verified embedding or nullopt when the
/// template is not a minor. Hosts are first reduced (pendant stripping when
/// the template has minimum degree >= 2, then per-component / per-block search
/// for connected / 2-connected templates); each searched piece must respect
/// the size guard or SizeGuardExceeded is thrown.
inline std::optional<MinorEmbedding> find_minor_bruteforce(const Graph& host, const Graph& tmpl,
                                                           const BruteForceOptions& opt = {}) {
  const Vertex h = tmpl.size();
  if (h == 0) return MinorEmbedding{};
  if (h > host.size() || tmpl.edge_count() > host.edge_count()) return std::nullopt;

  int min_deg = h > 0 ? tmpl.degree(0) : 0;
  for (Vertex a = 0; a < h; ++a) min_deg = std::min(min_deg, tmpl.degree(a));

  std::vector<char> alive(static_cast<std::size_t>(host.size()), 1);
  if (min_deg >= 2) {
    std::vector<int> deg(static_cast<std::size_t>(host.size()));
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < host.size(); ++v) {
      deg[v] = host.degree(v);
      if (deg[v] <= 1) stack.push_back(v);
    }
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (!alive[v]) continue;
      alive[v] = 0;
      for (Vertex w : host.neighbors(v))
        if (alive[w] && --deg[w] <= 1) stack.push_back(w);
    }
  }
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < host.size(); ++v)
    if (alive[v]) kept.push_back(v);
  if (static_cast<Vertex>(kept.size()) < h) return std::nullopt;
  Subgraph reduced = induced_subgraph(host, kept);

  std::vector<std::vector<Vertex>> pieces;
  if (detail::is_biconnected_template(tmpl)) {
    for (auto& b : detail::biconnected_blocks(reduced.graph))
      if (static_cast<Vertex>(b.size()) >= h) pieces.push_back(std::move(b));
  } else if (is_connected(tmpl)) {
    for (auto& c : connected_components(reduced.graph))
      if (static_cast<Vertex>(c.size()) >= h) pieces.push_back(std::move(c));
  } else {
    std::vector<Vertex> all(static_cast<std::size_t>(reduced.graph.size()));
    std::iota(all.begin(), all.end(), 0);
    pieces.push_back(std::move(all));
  }
  // Smaller pieces first.
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });

  for (const auto& piece : pieces) {
    if (static_cast<Vertex>(piece.size()) > std::min<Vertex>(opt.max_host_vertices, 64))
      throw SizeGuardExceeded("brute-force piece of " + std::to_string(piece.size()) +
                              " vertices exceeds guard of " +
                              std::to_string(opt.max_host_vertices));
    Subgraph sub = induced_subgraph(reduced.graph, piece);
    if (sub.graph.edge_count() < tmpl.edge_count()) continue;
    std::vector<detail::Mask> adj(piece.size(), 0);
    for (Vertex v = 0; v < sub.graph.size(); ++v)
      for (Vertex w : sub.graph.neighbors(v)) adj[v] |= detail::bit(w);
    detail::BranchSetSearch search(std::move(adj), tmpl, opt.max_steps);
    auto sets = search.run();
    if (!sets) continue;
    std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(h));
    for (Vertex a = 0; a < h; ++a)
      for (detail::Mask m = (*sets)[a]; m; m &= m - 1)
        branch[a].push_back(reduced.to_host[sub.to_host[std::countr_zero(m)]]);
    auto emb = embedding_from_branch_sets(host, tmpl, std::move(branch));
    if (emb && verify_embedding(host, tmpl, *emb)) return emb;
    throw std::logic_error("brute-force search produced an invalid embedding");
  }
  return std::nullopt;
}

/// Embeds a template given a model of an intermediate graph: if `inner` is a
/// model of `tmpl` in `mid`, and `outer` is a model of `mid` in `host`, the
/// result is a model of `tmpl` in `host`.
inline std::optional<MinorEmbedding> compose_embeddings(const Graph& host, const Graph& mid,
                                                        const Graph& tmpl,
                                                        const MinorEmbedding& outer,
                                                        const MinorEmbedding& inner) {
  (void)mid;
  std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(tmpl.size()));
  for (Vertex a = 0; a < tmpl.size(); ++a)
    for (Vertex m : inner.branch_sets[a])
      branch[a].insert(branch[a].end(), outer.branch_sets[m].begin(), outer.branch_sets[m].end());
  auto emb = embedding_from_branch_sets(host, tmpl, std::move(branch));
  if (emb && verify_embedding(host, tmpl, *emb)) return emb;
  return std::nullopt;
}

}  // namespace minorfree
