#pragma once

// Constructive cut-to-minor engines: path and star minors of trees with
// relevant vertices, a longest monotone subsequence, a bipartite matching, and
// the grid / circus / K2,k assemblies built from a large cut between two
// connected vertex sets. Every assembly is opportunistic: it either returns a
// verified embedding or reports failure, and failure proves nothing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "minorfree/graph.hpp"
#include "minorfree/minor.hpp"

namespace minorfree {

/// A spanning tree of some host vertex set together with relevant vertices.
struct RelevantTree {
  std::vector<Vertex> vertices;  // host ids, sorted
  std::vector<Edge> edges;       // host ids
  Vertex root = 0;
  std::vector<Vertex> relevant;
};

struct PathMinorResult {
  std::vector<std::vector<Vertex>> parts;  // in path order
  std::vector<Vertex> relevant_of_part;    // smallest relevant vertex per part
};

struct StarMinorResult {
  std::vector<Vertex> center;
  std::vector<std::vector<Vertex>> leaves;
  bool center_meets_relevant = false;
};

namespace detail {

/// Local adjacency of a RelevantTree after validating it is a tree.
struct LocalTree {
  std::vector<Vertex> ids;  // local -> host
  std::vector<std::vector<int>> adj;
  std::vector<char> relevant;

  int local(Vertex host) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), host);
    if (it == ids.end() || *it != host)
      throw std::invalid_argument("vertex " + std::to_string(host) + " is not in the tree");
    return static_cast<int>(it - ids.begin());
  }
};

inline LocalTree make_local_tree(const RelevantTree& t) {
  LocalTree lt;
  lt.ids = t.vertices;
  std::sort(lt.ids.begin(), lt.ids.end());
  if (lt.ids.empty()) throw std::invalid_argument("tree has no vertices");
  if (std::adjacent_find(lt.ids.begin(), lt.ids.end()) != lt.ids.end())
    throw std::invalid_argument("tree vertex list has duplicates");
  const int n = static_cast<int>(lt.ids.size());
  if (static_cast<int>(t.edges.size()) != n - 1)
    throw std::invalid_argument("tree must have exactly |V|-1 edges");
  lt.adj.assign(n, {});
  for (const Edge& e : t.edges) {
    int a = lt.local(e.lo), b = lt.local(e.hi);
    lt.adj[a].push_back(b);
    lt.adj[b].push_back(a);
  }
  for (auto& a : lt.adj) std::sort(a.begin(), a.end());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : lt.adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  if (count != n) throw std::invalid_argument("tree is disconnected");
  lt.relevant.assign(n, 0);
  for (Vertex q : t.relevant) lt.relevant[lt.local(q)] = 1;
  return lt;
}

}  // namespace detail

/// Merges relevant-free parts of degree <= 2 into a neighbor, then keeps a
/// longest leaf-to-leaf path of the contracted tree and folds every hanging
/// subtree into the path part it hangs from.
inline PathMinorResult path_minor_with_relevant(const RelevantTree& tree) {
  if (tree.relevant.empty()) throw std::invalid_argument("relevant set must be nonempty");
  detail::LocalTree lt = detail::make_local_tree(tree);
  const int n = static_cast<int>(lt.ids.size());

  // Parts are identified by the local index of their founding vertex.
  std::vector<std::vector<int>> members(n);
  std::vector<std::set<int>> padj(n);
  std::vector<char> alive(n, 1), rel(lt.relevant);
  for (int v = 0; v < n; ++v) {
    members[v] = {v};
    padj[v].insert(lt.adj[v].begin(), lt.adj[v].end());
  }
  std::set<int> work;
  auto consider = [&](int p) {
    if (alive[p] && !rel[p] && !padj[p].empty() && padj[p].size() <= 2) work.insert(p);
    else work.erase(p);
  };
  for (int v = 0; v < n; ++v) consider(v);
  while (!work.empty()) {
    int gone = *work.begin();
    work.erase(work.begin());
    int keep = *padj[gone].begin();  // smallest neighbor part absorbs it
    for (int w : padj[gone]) {
      if (w == keep) continue;
      padj[w].erase(gone);
      padj[w].insert(keep);
      padj[keep].insert(w);
    }
    padj[keep].erase(gone);
    padj[gone].clear();
    alive[gone] = 0;
    members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
    members[gone].clear();
    rel[keep] = rel[keep] || rel[gone];
    consider(keep);
  }

  // Longest path by double BFS; ties go to the smallest part id.
  auto farthest = [&](int src, std::vector<int>& parent) {
    std::vector<int> dist(n, -1);
    parent.assign(n, -1);
    std::queue<int> q;
    q.push(src);
    dist[src] = 0;
    int best = src;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (dist[x] > dist[best] || (dist[x] == dist[best] && x < best)) best = x;
      for (int y : padj[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push(y);
        }
    }
    return best;
  };
  int start = 0;
  while (!alive[start]) ++start;
  std::vector<int> parent;
  int a = farthest(start, parent);
  int b = farthest(a, parent);
  std::vector<int> path;
  for (int x = b; x >= 0; x = parent[x]) path.push_back(x);
  if (path.front() > path.back()) std::reverse(path.begin(), path.end());

  // Fold hanging subtrees into their path part (multi-source BFS).
  std::vector<int> owner(n, -1);
  std::queue<int> q;
  for (int i = 0; i < static_cast<int>(path.size()); ++i) {
    owner[path[i]] = i;
    q.push(path[i]);
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : padj[x])
      if (owner[y] < 0) {
        owner[y] = owner[x];
        q.push(y);
      }
  }
  PathMinorResult out;
  out.parts.assign(path.size(), {});
  out.relevant_of_part.assign(path.size(), -1);
  for (int p = 0; p < n; ++p) {
    if (!alive[p]) continue;
    auto& part = out.parts[owner[p]];
    for (int v : members[p]) part.push_back(lt.ids[v]);
  }
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    std::sort(out.parts[i].begin(), out.parts[i].end());
    for (Vertex v : out.parts[i])
      if (lt.relevant[lt.local(v)]) {
        out.relevant_of_part[i] = v;
        break;
      }
  }
  return out;
}

/// Star minor from maximal root-to-relevant paths. The root is dropped from
/// the relevant set. When `merge_one_leaf` is set and the center does not yet
/// meet the relevant set, the smallest leaf is folded into it. A lone leaf is
/// folded too: then every relevant vertex lies on one root path, so at most
/// `height` of them exist and the leaf bound floor(|Q| / 2h) is zero.
inline StarMinorResult star_minor_with_relevant(const RelevantTree& tree, int height,
                                                bool merge_one_leaf = true) {
  if (tree.relevant.empty()) throw std::invalid_argument("relevant set must be nonempty");
  detail::LocalTree lt = detail::make_local_tree(tree);
  const int n = static_cast<int>(lt.ids.size());
  const int root = lt.local(tree.root);
  std::vector<int> parent(n, -1), depth(n, -1), order;
  depth[root] = 0;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int x = order[head];
    for (int y : lt.adj[x])
      if (depth[y] < 0) {
        depth[y] = depth[x] + 1;
        parent[y] = x;
        order.push_back(y);
      }
  }
  if (*std::max_element(depth.begin(), depth.end()) > height)
    throw std::invalid_argument("tree height exceeds " + std::to_string(height));
  std::vector<char> rel(lt.relevant);
  const bool root_relevant = rel[root];
  rel[root] = 0;
  // Relevant vertices with no relevant proper descendant end maximal paths.
  std::vector<char> below(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0 && (below[*it] || rel[*it])) below[parent[*it]] = 1;
  std::vector<char> kept(n, 0), endpoint(n, 0);
  for (int v = 0; v < n; ++v)
    if (rel[v] && !below[v]) {
      endpoint[v] = 1;
      for (int x = v; x >= 0 && !kept[x]; x = parent[x]) kept[x] = 1;
    }
  kept[root] = 1;
  StarMinorResult out;
  for (int v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    if (endpoint[v]) out.leaves.push_back({lt.ids[v]});
    else out.center.push_back(lt.ids[v]);
  }
  out.center_meets_relevant = root_relevant;
  for (Vertex c : out.center) out.center_meets_relevant |= rel[lt.local(c)] != 0;
  if (merge_one_leaf && !out.center_meets_relevant && !out.leaves.empty()) {
    out.center.push_back(out.leaves.front().front());
    std::sort(out.center.begin(), out.center.end());
    out.leaves.erase(out.leaves.begin());
    out.center_meets_relevant = true;
  }
  return out;
}

struct MonotoneSubsequence {
  std::vector<std::size_t> positions;  // increasing indices into the input
  bool increasing = true;
};

/// The longer of the longest nondecreasing and nonincreasing subsequences
/// (nondecreasing wins ties).
inline MonotoneSubsequence monotone_subsequence(const std::vector<std::int64_t>& seq) {
  if (seq.empty()) throw std::invalid_argument("sequence must be nonempty");
  auto longest = [&](bool up) {
    // Patience sorting with upper_bound for the non-strict variant.
    std::vector<std::int64_t> tails;
    std::vector<std::size_t> tail_pos, prev(seq.size(), SIZE_MAX);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      std::int64_t x = up ? seq[i] : -seq[i];
      auto it = std::upper_bound(tails.begin(), tails.end(), x);
      std::size_t k = static_cast<std::size_t>(it - tails.begin());
      if (k > 0) prev[i] = tail_pos[k - 1];
      if (it == tails.end()) {
        tails.push_back(x);
        tail_pos.push_back(i);
      } else {
        *it = x;
        tail_pos[k] = i;
      }
    }
    std::vector<std::size_t> pos;
    for (std::size_t i = tail_pos.back(); i != SIZE_MAX; i = prev[i]) pos.push_back(i);
    std::reverse(pos.begin(), pos.end());
    return pos;
  };
  auto up = longest(true), down = longest(false);
  if (down.size() > up.size()) return {std::move(down), false};
  return {std::move(up), true};
}

/// Maximum bipartite matching by augmenting paths. `left_adj[i]` lists the
/// right indices adjacent to left index i. Returns (left, right) pairs sorted
/// by left index.
inline std::vector<std::pair<int, int>> cross_matching(int left, int right,
                                                       const std::vector<std::vector<int>>& left_adj) {
  std::vector<int> match_right(static_cast<std::size_t>(right), -1);
  std::vector<int> seen(static_cast<std::size_t>(right), -1);
  std::function<bool(int, int)> augment = [&](int i, int stamp) {
    for (int j : left_adj[i]) {
      if (seen[j] == stamp) continue;
      seen[j] = stamp;
      if (match_right[j] < 0 || augment(match_right[j], stamp)) {
        match_right[j] = i;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < left; ++i) augment(i, i);
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < right; ++j)
    if (match_right[j] >= 0) out.emplace_back(match_right[j], j);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Cut instances.

struct CutInstance {
  const Graph* host = nullptr;
  std::vector<Vertex> v1, v2;
  int k = 1;
  int h = 0;                         // height bound of G[V1]'s spanning tree
  std::optional<Vertex> root;        // root of V1's tree; smallest id if unset
};

/// Canonical BFS spanning tree of G[S] rooted at `root`.
inline RelevantTree bfs_spanning_tree(const Graph& g, std::vector<Vertex> s, Vertex root) {
  std::sort(s.begin(), s.end());
  RelevantTree t;
  t.vertices = s;
  t.root = root;
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0), seen(in);
  for (Vertex v : s) in[v] = 1;
  if (!in[root]) throw std::invalid_argument("root outside the vertex set");
  std::vector<Vertex> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : g.neighbors(queue[head]))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        t.edges.emplace_back(queue[head], w);
        queue.push_back(w);
      }
  if (queue.size() != s.size()) throw std::invalid_argument("vertex set is not connected");
  return t;
}

namespace detail {

struct CutContext {
  const Graph& g;
  std::vector<char> in1, in2;
};

inline CutContext validate_cut(const CutInstance& c) {
  if (!c.host) throw std::invalid_argument("cut instance has no host");
  const Graph& g = *c.host;
  if (c.k < 1) throw std::invalid_argument("k must be >= 1");
  if (c.v1.empty() || c.v2.empty()) throw std::invalid_argument("cut sides must be nonempty");
  CutContext ctx{g, std::vector<char>(static_cast<std::size_t>(g.size()), 0), {}};
  ctx.in2 = ctx.in1;
  for (Vertex v : c.v1) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("vertex out of range");
    ctx.in1[v] = 1;
  }
  for (Vertex v : c.v2) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("vertex out of range");
    if (ctx.in1[v]) throw std::invalid_argument("cut sides overlap");
    ctx.in2[v] = 1;
  }
  if (!is_connected_set(g, c.v1) || !is_connected_set(g, c.v2))
    throw std::invalid_argument("cut sides must induce connected subgraphs");
  return ctx;
}

inline Vertex root_of(const CutInstance& c) {
  return c.root ? *c.root : *std::min_element(c.v1.begin(), c.v1.end());
}

/// Lowest-rank edge from `part` into the marked region, if any.
inline std::optional<Edge> lowest_cross_edge(const Graph& g, const std::vector<Vertex>& part,
                                             const std::vector<char>& region) {
  std::optional<Edge> best;
  for (Vertex x : part)
    for (Vertex w : g.neighbors(x))
      if (region[w] && (!best || Edge(x, w) < *best)) best = Edge(x, w);
  return best;
}

/// Consecutive path parts grouped so that group l starts at chosen[l]
/// (chosen sorted ascending); the last group is just its starting part.
inline std::vector<std::vector<Vertex>> segments(const std::vector<std::vector<Vertex>>& parts,
                                                 const std::vector<int>& chosen) {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t l = 0; l < chosen.size(); ++l) {
    int end = l + 1 < chosen.size() ? chosen[l + 1] : chosen[l] + 1;
    std::vector<Vertex> seg;
    for (int i = chosen[l]; i < end; ++i) seg.insert(seg.end(), parts[i].begin(), parts[i].end());
    out.push_back(std::move(seg));
  }
  return out;
}

inline std::optional<MinorEmbedding> finish(const Graph& g, const Graph& tmpl,
                                            std::vector<std::vector<Vertex>> branch) {
  auto emb = embedding_from_branch_sets(g, tmpl, std::move(branch));
  if (!emb) return std::nullopt;
  if (!verify_embedding(g, tmpl, *emb))
    throw std::logic_error("cut construction assembled an invalid embedding");
  return emb;
}

/// Leaves (each adjacent to the connected set `center`) are matched to path
/// parts of the connected `region`; k matched pairs become a k-circus.
inline std::optional<MinorEmbedding> circus_from_parts(const Graph& g,
                                                       const std::vector<Vertex>& center,
                                                       const std::vector<std::vector<Vertex>>& leaves,
                                                       const std::vector<Vertex>& region, int k) {
  if (static_cast<int>(leaves.size()) < k) return std::nullopt;
  std::vector<char> in_region(static_cast<std::size_t>(g.size()), 0);
  for (Vertex v : region) in_region[v] = 1;
  std::vector<Edge> kept;  // one surviving cross edge per leaf
  std::vector<int> leaf_of;
  std::vector<Vertex> q2;
  for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
    auto e = lowest_cross_edge(g, leaves[i], in_region);
    if (!e) continue;
    kept.push_back(*e);
    leaf_of.push_back(i);
    q2.push_back(in_region[e->lo] ? e->lo : e->hi);
  }
  if (static_cast<int>(kept.size()) < k) return std::nullopt;
  RelevantTree t2 = bfs_spanning_tree(g, region, *std::min_element(region.begin(), region.end()));
  std::sort(q2.begin(), q2.end());
  q2.erase(std::unique(q2.begin(), q2.end()), q2.end());
  t2.relevant = q2;
  PathMinorResult p2 = path_minor_with_relevant(t2);
  std::map<Vertex, int> part_of;
  for (int j = 0; j < static_cast<int>(p2.parts.size()); ++j)
    for (Vertex v : p2.parts[j]) part_of[v] = j;
  std::vector<std::vector<int>> adj(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    adj[i] = {part_of.at(in_region[kept[i].lo] ? kept[i].lo : kept[i].hi)};
  auto m = cross_matching(static_cast<int>(kept.size()), static_cast<int>(p2.parts.size()), adj);
  if (static_cast<int>(m.size()) < k) return std::nullopt;
  std::sort(m.begin(), m.end(), [](auto x, auto y) { return x.second < y.second; });
  m.resize(static_cast<std::size_t>(k));
  std::vector<int> chosen;
  for (auto [i, j] : m) chosen.push_back(j);
  auto zs = segments(p2.parts, chosen);
  // circus: x = 0, y_i = i, z_i = k+i
  std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(2 * k + 1));
  branch[0] = center;
  for (int l = 0; l < k; ++l) {
    branch[1 + l] = leaves[leaf_of[m[l].first]];
    branch[1 + k + l] = zs[l];
  }
  return finish(g, make_circus(k).graph, std::move(branch));
}

/// K2,k from a center, leaves adjacent to it and a connected region touching
/// k of the leaves.
inline std::optional<MinorEmbedding> k2k_from_parts(const Graph& g,
                                                    const std::vector<Vertex>& center,
                                                    const std::vector<std::vector<Vertex>>& leaves,
                                                    const std::vector<Vertex>& region, int k) {
  std::vector<char> in_region(static_cast<std::size_t>(g.size()), 0);
  for (Vertex v : region) in_region[v] = 1;
  // sides a = 0, b = 1; c_i = i+1
  std::vector<std::vector<Vertex>> branch{center, region};
  for (const auto& leaf : leaves) {
    if (static_cast<int>(branch.size()) == k + 2) break;
    if (lowest_cross_edge(g, leaf, in_region)) branch.push_back(leaf);
  }
  if (static_cast<int>(branch.size()) < k + 2) return std::nullopt;
  return finish(g, make_k2k(k).graph, std::move(branch));
}

/// Fallback when V1's star has too few leaves (e.g. V1 is a single vertex):
/// leaves are taken from V2 instead. Tries k-subsets W of V2's vertices
/// adjacent to V1, and every component of G[V2 \ W] as the remaining region.
template <class Assemble>
std::optional<MinorEmbedding> with_v2_leaves(const Graph& g, const CutContext& ctx,
                                             const std::vector<Vertex>& v1,
                                             const std::vector<Vertex>& v2, int k,
                                             Assemble assemble) {
  constexpr std::size_t kMaxSubsets = 4096;
  std::vector<Vertex> cand;
  for (Vertex w : v2)
    for (Vertex x : g.neighbors(w))
      if (ctx.in1[x]) {
        cand.push_back(w);
        break;
      }
  if (static_cast<int>(cand.size()) < k) return std::nullopt;
  std::vector<int> pick(static_cast<std::size_t>(k));
  std::iota(pick.begin(), pick.end(), 0);
  for (std::size_t tried = 0; tried < kMaxSubsets; ++tried) {
    std::vector<char> taken(static_cast<std::size_t>(g.size()), 0);
    std::vector<std::vector<Vertex>> leaves;
    for (int i : pick) {
      taken[cand[i]] = 1;
      leaves.push_back({cand[i]});
    }
    std::vector<Vertex> rest;
    for (Vertex w : v2)
      if (!taken[w]) rest.push_back(w);
    if (!rest.empty()) {
      Subgraph sub = induced_subgraph(g, rest);
      for (const auto& comp : connected_components(sub.graph)) {
        std::vector<Vertex> region;
        for (Vertex x : comp) region.push_back(sub.to_host[x]);
        if (auto emb = assemble(v1, leaves, region)) return emb;
      }
    }
    // Next k-subset in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pick[i] == static_cast<int>(cand.size()) - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

/// Cuts with at most this many vertices get an exact search as a last resort.
inline constexpr std::size_t kExactCutLimit = 14;

/// Exact search on G[V1 u V2] for small cuts. It covers instances the
/// structured steps cannot, such as a single-vertex first side whose only
/// crossing edge runs into a cycle of the second side.
inline std::optional<MinorEmbedding> exact_on_small_cut(const CutInstance& c,
                                                        const Graph& tmpl) {
  if (c.v1.size() + c.v2.size() > kExactCutLimit) return std::nullopt;
  std::vector<Vertex> all = c.v1;
  all.insert(all.end(), c.v2.begin(), c.v2.end());
  Subgraph sub = induced_subgraph(*c.host, all);
  auto local = find_minor_bruteforce(sub.graph, tmpl);
  if (!local) return std::nullopt;
  std::vector<std::vector<Vertex>> branch;
  for (const auto& set : local->branch_sets) {
    std::vector<Vertex> lifted;
    for (Vertex x : set) lifted.push_back(sub.to_host[x]);
    branch.push_back(std::move(lifted));
  }
  return finish(*c.host, tmpl, std::move(branch));
}

}  // namespace detail

/// (k×2)-grid from a cut: path minors on both sides, a matching between them
/// and a monotone run of matched pairs.
inline std::optional<MinorEmbedding> grid_minor_from_cut(const CutInstance& c) {
  auto ctx = detail::validate_cut(c);
  const Graph& g = ctx.g;
  const int k = c.k;
  RelevantTree t1 = bfs_spanning_tree(g, c.v1, *std::min_element(c.v1.begin(), c.v1.end()));
  for (Vertex v : t1.vertices)
    for (Vertex w : g.neighbors(v))
      if (ctx.in2[w]) {
        t1.relevant.push_back(v);
        break;
      }
  if (t1.relevant.empty()) return std::nullopt;
  PathMinorResult p1 = path_minor_with_relevant(t1);
  if (static_cast<int>(p1.parts.size()) < k) return std::nullopt;
  std::vector<Edge> kept;
  std::vector<Vertex> q2;
  for (const auto& part : p1.parts) {
    auto e = detail::lowest_cross_edge(g, part, ctx.in2);
    kept.push_back(*e);  // every part meets Q1, so an edge exists
    q2.push_back(ctx.in2[e->lo] ? e->lo : e->hi);
  }
  RelevantTree t2 = bfs_spanning_tree(g, c.v2, *std::min_element(c.v2.begin(), c.v2.end()));
  t2.relevant = q2;
  std::sort(t2.relevant.begin(), t2.relevant.end());
  t2.relevant.erase(std::unique(t2.relevant.begin(), t2.relevant.end()), t2.relevant.end());
  PathMinorResult p2 = path_minor_with_relevant(t2);
  std::map<Vertex, int> part_of;
  for (int j = 0; j < static_cast<int>(p2.parts.size()); ++j)
    for (Vertex v : p2.parts[j]) part_of[v] = j;
  std::vector<std::vector<int>> adj(p1.parts.size());
  for (std::size_t i = 0; i < kept.size(); ++i) adj[i] = {part_of.at(q2[i])};
  auto m = cross_matching(static_cast<int>(p1.parts.size()), static_cast<int>(p2.parts.size()), adj);
  if (static_cast<int>(m.size()) < k) return std::nullopt;
  std::vector<std::int64_t> seq;
  for (auto [i, j] : m) seq.push_back(j);
  auto mono = monotone_subsequence(seq);
  if (static_cast<int>(mono.positions.size()) < k) return std::nullopt;
  mono.positions.resize(static_cast<std::size_t>(k));
  std::vector<int> rows, cols;
  for (std::size_t p : mono.positions) {
    rows.push_back(m[p].first);
    cols.push_back(m[p].second);
  }
  auto xs = detail::segments(p1.parts, rows);
  std::vector<int> sorted_cols(cols);
  std::sort(sorted_cols.begin(), sorted_cols.end());
  auto ys_sorted = detail::segments(p2.parts, sorted_cols);
  // grid: x_i = i-1, y_i = k+i-1
  std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(2 * k));
  for (int l = 0; l < k; ++l) {
    branch[l] = xs[l];
    auto at = std::lower_bound(sorted_cols.begin(), sorted_cols.end(), cols[l]) - sorted_cols.begin();
    branch[k + l] = ys_sorted[at];
  }
  return detail::finish(g, make_grid(k).graph, std::move(branch));
}

/// k-circus from a cut whose first side has a spanning tree of height <= h.
inline std::optional<MinorEmbedding> circus_minor_from_cut(const CutInstance& c) {
  auto ctx = detail::validate_cut(c);
  const Graph& g = ctx.g;
  RelevantTree t1 = bfs_spanning_tree(g, c.v1, detail::root_of(c));
  for (Vertex v : t1.vertices)
    for (Vertex w : g.neighbors(v))
      if (ctx.in2[w]) {
        t1.relevant.push_back(v);
        break;
      }
  if (t1.relevant.empty()) return std::nullopt;
  auto star = star_minor_with_relevant(t1, c.h, /*merge_one_leaf=*/false);
  if (auto emb = detail::circus_from_parts(g, star.center, star.leaves, c.v2, c.k)) return emb;
  if (auto emb = detail::with_v2_leaves(g, ctx, c.v1, c.v2, c.k,
                                       [&](const auto& x, const auto& ys, const auto& r) {
                                         return detail::circus_from_parts(g, x, ys, r, c.k);
                                       }))
    return emb;
  return detail::exact_on_small_cut(c, make_circus(c.k).graph);
}

/// K2,k from a cut: star leaves on the first side, the second side contracted.
inline std::optional<MinorEmbedding> k2k_minor_from_cut(const CutInstance& c) {
  auto ctx = detail::validate_cut(c);
  const Graph& g = ctx.g;
  RelevantTree t1 = bfs_spanning_tree(g, c.v1, detail::root_of(c));
  for (Vertex v : t1.vertices)
    for (Vertex w : g.neighbors(v))
      if (ctx.in2[w]) {
        t1.relevant.push_back(v);
        break;
      }
  if (t1.relevant.empty()) return std::nullopt;
  auto star = star_minor_with_relevant(t1, c.h, /*merge_one_leaf=*/false);
  if (auto emb = detail::k2k_from_parts(g, star.center, star.leaves, c.v2, c.k)) return emb;
  if (auto emb = detail::with_v2_leaves(g, ctx, c.v1, c.v2, c.k,
                                       [&](const auto& x, const auto& cs, const auto& r) {
                                         return detail::k2k_from_parts(g, x, cs, r, c.k);
                                       }))
    return emb;
  return detail::exact_on_small_cut(c, make_k2k(c.k).graph);
}

}  // namespace minorfree
