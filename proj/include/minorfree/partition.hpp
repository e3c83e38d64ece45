#pragma once

// Locally computable partition of a bounded-degree graph: centers and their
// Voronoi cells, core clusters cut out of the cells' BFS trees, marked cells
// and the joins that form super clusters, and remote clusters obtained from
// exponential-clock leader election on the vertices far from every center.
//
// A PartitionState is a deterministic function of (graph, config). Its memo
// tables make it stateful, so one state must not be shared between threads;
// parallel harness trials each build their own.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "minorfree/graph.hpp"
#include "minorfree/oracle.hpp"

namespace minorfree {

struct PartitionConfig {
  double gamma = 0.1;               // cut slack
  double alpha = 0.1;               // cluster budget
  double const_b = 2.0;             // constant in the range of ell
  double const_c = 1.0;             // constant in the cluster cap t
  double center_count_coeff = 1.0;  // |S| = coeff * alpha * n^{2/3} / ln n
  double y_coeff = 1.0;             // y = coeff * n^{1/3} * ln^2 n / alpha
  std::optional<double> mark_probability;  // defaults to n^{-1/3}
  std::uint64_t seed = 0;

  void validate() const {
    auto positive = [](double x, const char* name) {
      if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(const_b, "const_b");
    positive(const_c, "const_c");
    positive(center_count_coeff, "center_count_coeff");
    positive(y_coeff, "y_coeff");
    if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("gamma must lie in (0,1]");
    if (!(alpha > 0 && alpha <= 1)) throw std::invalid_argument("alpha must lie in (0,1]");
    if (mark_probability && !(*mark_probability >= 0 && *mark_probability <= 1))
      throw std::invalid_argument("mark_probability must lie in [0,1]");
  }
};

/// The bounded exploration ran into its vertex cap before finding a center:
/// the conditioning event of the local implementation failed for this vertex.
class LocalAccessFailure : public std::runtime_error {
 public:
  LocalAccessFailure(Vertex v, std::size_t cap)
      : std::runtime_error("local access failure: ball around " + std::to_string(v) +
                           " reached " + std::to_string(cap) + " vertices without a center"),
        vertex(v) {}
  Vertex vertex;
};

enum class ClusterKind { kCoreWholeCell, kCoreSingleton, kCoreSubtree, kRemote };

inline const char* cluster_kind_name(ClusterKind k) {
  switch (k) {
    case ClusterKind::kCoreWholeCell: return "whole_cell";
    case ClusterKind::kCoreSingleton: return "singleton";
    case ClusterKind::kCoreSubtree: return "subtree";
    case ClusterKind::kRemote: return "remote";
  }
  return "?";
}

struct ClusterDescriptor {
  ClusterKind kind = ClusterKind::kCoreSingleton;
  std::vector<Vertex> members;  // sorted
  Vertex anchor = 0;            // center for core kinds, leader for remote
  Vertex root = 0;              // subtree root; equals anchor for whole cells and remote

  bool contains(Vertex v) const { return std::binary_search(members.begin(), members.end(), v); }
  bool is_core() const { return kind != ClusterKind::kRemote; }
  bool is_singleton() const { return members.size() == 1; }
  /// Clusters are identified by (kind is remote, root).
  bool same_cluster(const ClusterDescriptor& o) const {
    return is_core() == o.is_core() && root == o.root;
  }
  bool operator==(const ClusterDescriptor&) const = default;
};

/// Result of center_of: the center, and the lexicographically smallest
/// shortest path from it to the queried vertex (center first).
struct CenterInfo {
  bool remote = false;
  Vertex center = -1;
  std::vector<Vertex> path;

  int distance() const { return static_cast<int>(path.size()) - 1; }
  /// BFS-tree parent; a center is its own parent.
  Vertex parent() const { return path.size() >= 2 ? path[path.size() - 2] : path.back(); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in (0,1), a pure function of (seed, stream, key).
inline double hashed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t key) {
  std::uint64_t h = splitmix64(splitmix64(seed ^ (stream * 0xd1b54a32d192ed03ULL)) ^ key);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

enum : std::uint64_t { kStreamMark = 1, kStreamClock = 2, kStreamEll = 3 };

}  // namespace detail

class PartitionState {
 public:
  PartitionConfig config;
  Vertex n = 0;
  int delta = 0;
  int ell = 0;
  double t = 0;             // cluster size cap
  double y = 0;             // exploration cap of center searches
  double beta = 0;          // clock rate
  double mark_p = 0;
  std::vector<Vertex> centers;  // sorted
  std::vector<std::string> warnings;

  bool is_center(Vertex v) const { return center_flag_[v] != 0; }
  bool is_marked(Vertex center) const {
    if (!is_center(center)) return false;
    if (!marked_override.empty()) return marked_override[center] != 0;
    return detail::hashed_uniform(config.seed, detail::kStreamMark, center) < mark_p;
  }
  /// Exponential clock r_v with rate beta, via the inverse CDF of a hashed uniform.
  double clock(Vertex v) const {
    if (clock_override) return clock_override(v);
    return -std::log(detail::hashed_uniform(config.seed, detail::kStreamClock, v)) / beta;
  }
  /// t >= n or |S| >= n: every cell fits in one cluster.
  bool degenerate() const { return t >= n || static_cast<Vertex>(centers.size()) >= n; }
  /// Subtree sizes are tracked up to this value; it separates both "<= t" and ">= t".
  std::size_t size_cap() const {
    return static_cast<std::size_t>(std::min<double>(std::floor(t), n)) + 1;
  }
  /// |T| >= t for an integer size.
  bool at_least_t(std::size_t size) const { return static_cast<double>(size) >= t; }

 private:
  friend PartitionState init_partition(const QueryOracle&, const PartitionConfig&);
  friend struct PartitionFixture;
  std::vector<char> center_flag_;
  std::vector<char> marked_override;
  std::function<double(Vertex)> clock_override;

 public:
  /// Memoized local answers; filling them is idempotent.
  struct Memo {
    std::unordered_map<Vertex, CenterInfo> center;
    std::unordered_map<Vertex, std::vector<Vertex>> children;
    std::unordered_map<Vertex, std::size_t> subtree;
    std::unordered_map<Vertex, Vertex> cluster_root;
    std::unordered_map<Vertex, ClusterDescriptor> cluster;  // keyed by root
    std::unordered_map<Vertex, Vertex> leader;
  } memo;

  /// Reusable buffers for center searches. Entries are valid only when their
  /// stamp equals the current epoch, so a search never clears them.
  struct Scratch {
    std::vector<std::uint32_t> stamp;
    std::vector<int> dist;
    std::vector<std::size_t> adj_at, adj_len;  // slice of pool, for expanded vertices
    std::vector<Vertex> pool, order;
    std::uint32_t epoch = 0;
    // Remote-ball traversals run center searches inside, so they get their own.
    std::vector<std::uint32_t> ball_stamp;
    std::vector<std::pair<Vertex, int>> ball;
    std::uint32_t ball_epoch = 0;
    std::vector<double> clock;  // cached clocks, NaN until first read
  } scratch;
};

/// Integer range of ell: integer points of [b ln n / ln(1+gamma), that + delta/gamma].
inline std::pair<int, int> ell_range(Vertex n, int delta, const PartitionConfig& cfg) {
  double lo = cfg.const_b * std::log(static_cast<double>(n)) / std::log1p(cfg.gamma);
  double hi = lo + static_cast<double>(delta) / cfg.gamma;
  int a = static_cast<int>(std::ceil(lo - 1e-9));
  int b = static_cast<int>(std::floor(hi + 1e-9));
  a = std::max(a, 1);
  return {a, std::max(a, b)};
}

/// The ell a given config will use; it depends only on (n, delta, gamma, b, seed),
/// so callers can derive alpha from it before building the state.
inline int sample_ell(Vertex n, int delta, const PartitionConfig& cfg) {
  auto [lo, hi] = ell_range(n, delta, cfg);
  double u = detail::hashed_uniform(cfg.seed, detail::kStreamEll, 0);
  return std::min(hi, lo + static_cast<int>(u * (hi - lo + 1)));
}

inline PartitionState init_partition(const QueryOracle& oracle, const PartitionConfig& cfg) {
  cfg.validate();
  const Vertex n = oracle.size();
  if (n < 2) throw std::invalid_argument("partition needs at least two vertices");
  PartitionState st;
  st.config = cfg;
  st.n = n;
  st.delta = oracle.delta();
  const double ln_n = std::log(static_cast<double>(n));

  std::mt19937_64 rng(detail::splitmix64(cfg.seed));
  st.ell = sample_ell(n, st.delta, cfg);
  st.t = cfg.const_c * std::cbrt(static_cast<double>(n)) * ln_n * st.ell * st.delta / cfg.alpha;
  st.y = cfg.y_coeff * std::cbrt(static_cast<double>(n)) * ln_n * ln_n / cfg.alpha;
  st.beta = cfg.const_b * ln_n / st.ell;  // ln(n/delta) / h with delta = n^{-(b-1)}, h = ell
  st.mark_p = cfg.mark_probability.value_or(1.0 / std::cbrt(static_cast<double>(n)));

  double want = std::ceil(cfg.center_count_coeff * cfg.alpha *
                          std::pow(static_cast<double>(n), 2.0 / 3.0) / ln_n);
  Vertex count = static_cast<Vertex>(std::max(1.0, std::min(want, static_cast<double>(n))));
  if (want >= n)
    st.warnings.push_back("center count " + std::to_string(static_cast<long long>(want)) +
                          " clamped to n = " + std::to_string(n));
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  std::sample(all.begin(), all.end(), std::back_inserter(st.centers), count, rng);
  std::sort(st.centers.begin(), st.centers.end());
  st.center_flag_.assign(static_cast<std::size_t>(n), 0);
  for (Vertex c : st.centers) st.center_flag_[c] = 1;
  if (st.t >= n) st.warnings.push_back("cluster cap t exceeds n: every cell is one cluster");
  return st;
}

/// Hand-built partition parameters for fixtures and experiments that need to
/// pin down the random choices. Unset fields keep the sampled values.
struct PartitionFixture {
  std::optional<std::vector<Vertex>> centers;
  std::optional<int> ell;
  std::optional<double> t;
  std::optional<std::vector<Vertex>> marked;  // centers to mark; others unmarked
  std::function<double(Vertex)> clocks;

  PartitionState apply(const QueryOracle& oracle, const PartitionConfig& cfg) const {
    PartitionState st = init_partition(oracle, cfg);
    if (centers) {
      st.centers = *centers;
      std::sort(st.centers.begin(), st.centers.end());
      st.centers.erase(std::unique(st.centers.begin(), st.centers.end()), st.centers.end());
      st.center_flag_.assign(static_cast<std::size_t>(st.n), 0);
      for (Vertex c : st.centers) {
        if (c < 0 || c >= st.n) throw std::invalid_argument("fixture center out of range");
        st.center_flag_[c] = 1;
      }
    }
    if (ell) {
      if (*ell < 1) throw std::invalid_argument("fixture ell must be positive");
      st.ell = *ell;
      st.beta = cfg.const_b * std::log(static_cast<double>(st.n)) / st.ell;
    }
    if (t) st.t = *t;
    if (marked) {
      st.marked_override.assign(static_cast<std::size_t>(st.n), 0);
      for (Vertex c : *marked) st.marked_override.at(c) = 1;
    }
    if (clocks) st.clock_override = clocks;
    return st;
  }
};

/// Nearest center (smallest id among the nearest) within ell hops, with the
/// lexicographically smallest shortest path to it, or remote.
inline const CenterInfo& center_of(QueryOracle& oracle, PartitionState& st, Vertex v) {
  if (auto it = st.memo.center.find(v); it != st.memo.center.end()) return it->second;
  CenterInfo info;
  if (st.is_center(v)) {
    info.center = v;
    info.path = {v};
    return st.memo.center.emplace(v, std::move(info)).first->second;
  }
  const auto cap = static_cast<std::size_t>(std::max(1.0, std::ceil(st.y)));
  auto& sc = st.scratch;
  if (sc.stamp.size() != static_cast<std::size_t>(st.n)) {
    sc.stamp.assign(static_cast<std::size_t>(st.n), 0);
    sc.dist.assign(sc.stamp.size(), 0);
    sc.adj_at.assign(sc.stamp.size(), 0);
    sc.adj_len.assign(sc.stamp.size(), 0);
    sc.epoch = 0;
  }
  if (++sc.epoch == 0) {
    std::fill(sc.stamp.begin(), sc.stamp.end(), 0u);
    sc.epoch = 1;
  }
  auto dist_of = [&](Vertex w) { return sc.stamp[w] == sc.epoch ? sc.dist[w] : -1; };
  auto adj = [&](Vertex x) {
    return std::span<const Vertex>(sc.pool.data() + sc.adj_at[x], sc.adj_len[x]);
  };
  sc.pool.clear();
  sc.order.assign(1, v);
  sc.stamp[v] = sc.epoch;
  sc.dist[v] = 0;
  // Level i occupies order[level_begin .. level_end).
  std::size_t level_begin = 0, level_end = 1;
  if (level_end >= cap) throw LocalAccessFailure(v, cap);
  for (int i = 0;; ++i) {
    if (i == st.ell) {
      info.remote = true;
      break;
    }
    for (std::size_t q = level_begin; q < level_end; ++q) {
      const Vertex x = sc.order[q];
      auto nb = oracle.read_neighbors(x);
      sc.adj_at[x] = sc.pool.size();
      sc.adj_len[x] = nb.size();
      sc.pool.insert(sc.pool.end(), nb.begin(), nb.end());
      for (Vertex w : nb)
        if (sc.stamp[w] != sc.epoch) {
          sc.stamp[w] = sc.epoch;
          sc.dist[w] = i + 1;
          sc.order.push_back(w);
        }
    }
    if (sc.order.size() == level_end) {
      info.remote = true;
      break;
    }
    const std::size_t next_begin = level_end, next_end = sc.order.size();
    Vertex best = -1;
    for (std::size_t q = next_begin; q < next_end; ++q) {
      const Vertex w = sc.order[q];
      if (st.is_center(w) && (best < 0 || w < best)) best = w;
    }
    if (best >= 0) {
      // Walk from the center towards v, always to the smallest-id neighbor one
      // step closer to v; every such step stays on a shortest path.
      const int d = i + 1;
      info.center = best;
      info.path = {best};
      Vertex cur = best;
      for (int j = 1; j <= d; ++j) {
        Vertex pick = -1;
        if (j == 1) {
          for (std::size_t q = level_begin; q < level_end; ++q) {
            const Vertex x = sc.order[q];
            auto nx = adj(x);
            if (std::binary_search(nx.begin(), nx.end(), best) && (pick < 0 || x < pick)) pick = x;
          }
        } else {
          for (Vertex w : adj(cur))
            if (dist_of(w) == d - j) {
              pick = w;
              break;  // adjacency lists are ascending
            }
        }
        info.path.push_back(pick);
        cur = pick;
      }
      // Prefixes of the path are the smallest geodesics of its vertices.
      for (std::size_t j = 1; j + 1 < info.path.size(); ++j) {
        CenterInfo prefix;
        prefix.center = best;
        prefix.path.assign(info.path.begin(), info.path.begin() + static_cast<long>(j) + 1);
        st.memo.center.emplace(info.path[j], std::move(prefix));
      }
      break;
    }
    if (next_end >= cap) throw LocalAccessFailure(v, cap);
    level_begin = next_begin;
    level_end = next_end;
  }
  return st.memo.center.emplace(v, std::move(info)).first->second;
}

inline bool is_remote(QueryOracle& oracle, PartitionState& st, Vertex v) {
  return center_of(oracle, st, v).remote;
}

/// Children of x in the BFS tree of its Voronoi cell, ascending.
inline const std::vector<Vertex>& bfs_children(QueryOracle& oracle, PartitionState& st,
                                               Vertex x) {
  if (auto it = st.memo.children.find(x); it != st.memo.children.end()) return it->second;
  const CenterInfo& mine = center_of(oracle, st, x);  // memo entries never move
  std::vector<Vertex> out;
  if (!mine.remote) {
    for (Vertex w : oracle.neighbors(x)) {
      const CenterInfo& other = center_of(oracle, st, w);
      if (!other.remote && other.center == mine.center &&
          other.distance() == mine.distance() + 1 && other.parent() == x)
        out.push_back(w);
    }
  }
  return st.memo.children.emplace(x, std::move(out)).first->second;
}

/// min(|T(x)|, size_cap()), where T(x) is the BFS subtree below x (the whole
/// cell when x is a center).
inline std::size_t capped_subtree_size(QueryOracle& oracle, PartitionState& st, Vertex x) {
  if (auto it = st.memo.subtree.find(x); it != st.memo.subtree.end()) return it->second;
  const std::size_t cap = st.size_cap();
  std::size_t size = 1;
  std::vector<Vertex> kids = bfs_children(oracle, st, x);
  for (Vertex c : kids) {
    if (size >= cap) break;
    size += capped_subtree_size(oracle, st, c);
  }
  size = std::min(size, cap);
  st.memo.subtree.emplace(x, size);
  return size;
}

namespace detail {

inline std::vector<Vertex> collect_subtree(QueryOracle& oracle, PartitionState& st, Vertex root) {
  std::vector<Vertex> out{root};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const auto& kids = bfs_children(oracle, st, out[head]);
    out.insert(out.end(), kids.begin(), kids.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Core cluster of a non-remote vertex, by the three-case rule on its cell's BFS tree.
inline const ClusterDescriptor& cluster_of(QueryOracle& oracle, PartitionState& st, Vertex v) {
  if (auto it = st.memo.cluster_root.find(v); it != st.memo.cluster_root.end())
    return st.memo.cluster.at(it->second);
  const CenterInfo info = center_of(oracle, st, v);
  if (info.remote)
    throw std::invalid_argument("vertex " + std::to_string(v) + " is remote; use remote_leader");
  const Vertex c = info.center;
  ClusterDescriptor d;
  d.anchor = c;
  if (capped_subtree_size(oracle, st, c) <= std::floor(st.t)) {
    d.kind = ClusterKind::kCoreWholeCell;
    d.root = c;
  } else if (st.at_least_t(capped_subtree_size(oracle, st, v))) {
    d.kind = ClusterKind::kCoreSingleton;
    d.root = v;
  } else {
    Vertex u = v;
    for (;;) {
      Vertex p = center_of(oracle, st, u).parent();
      if (st.at_least_t(capped_subtree_size(oracle, st, p))) break;
      u = p;
    }
    d.kind = ClusterKind::kCoreSubtree;
    d.root = u;
  }
  if (auto it = st.memo.cluster.find(d.root); it != st.memo.cluster.end()) {
    st.memo.cluster_root.emplace(v, d.root);
    return it->second;
  }
  d.members = d.kind == ClusterKind::kCoreSingleton ? std::vector<Vertex>{v}
                                                    : detail::collect_subtree(oracle, st, d.root);
  for (Vertex m : d.members) st.memo.cluster_root.emplace(m, d.root);
  return st.memo.cluster.emplace(d.root, std::move(d)).first->second;
}

/// c(∂A): centers of the non-remote neighbors of A outside A, ascending.
inline std::vector<Vertex> adjacent_centers(QueryOracle& oracle, PartitionState& st,
                                            const std::vector<Vertex>& a_sorted) {
  std::vector<Vertex> out;
  for (Vertex u : a_sorted)
    for (Vertex w : oracle.neighbors(u)) {
      if (std::binary_search(a_sorted.begin(), a_sorted.end(), w)) continue;
      const CenterInfo& ci = center_of(oracle, st, w);
      if (!ci.remote) out.push_back(ci.center);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The marked cluster that the unmarked core cluster A joins through its
/// minimum-rank edge into a marked cell, if any.
inline std::optional<ClusterDescriptor> join_target(QueryOracle& oracle, PartitionState& st,
                                                    const ClusterDescriptor& a) {
  if (!a.is_core()) throw std::invalid_argument("join_target needs a core cluster");
  if (st.is_marked(a.anchor)) throw std::invalid_argument("join_target: cluster is marked");
  std::optional<Edge> best;
  for (Vertex u : a.members)
    for (Vertex w : oracle.neighbors(u)) {
      if (a.contains(w)) continue;
      Edge e(u, w);
      if (best && !(e < *best)) continue;
      const CenterInfo& ci = center_of(oracle, st, w);
      if (ci.remote || !st.is_marked(ci.center)) continue;
      best = e;
    }
  if (!best) return std::nullopt;
  Vertex outside = a.contains(best->lo) ? best->hi : best->lo;
  return cluster_of(oracle, st, outside);
}

namespace detail {

/// Γ_ell(v, G[R]) with hop distances, in BFS order. The result lives in the
/// partition's scratch space and is overwritten by the next call.
inline const std::vector<std::pair<Vertex, int>>& remote_ball(QueryOracle& oracle,
                                                               PartitionState& st, Vertex v) {
  auto& sc = st.scratch;
  if (sc.ball_stamp.size() != static_cast<std::size_t>(st.n)) {
    sc.ball_stamp.assign(static_cast<std::size_t>(st.n), 0);
    sc.ball_epoch = 0;
  }
  if (++sc.ball_epoch == 0) {
    std::fill(sc.ball_stamp.begin(), sc.ball_stamp.end(), 0u);
    sc.ball_epoch = 1;
  }
  sc.ball.assign(1, {v, 0});
  sc.ball_stamp[v] = sc.ball_epoch;
  for (std::size_t head = 0; head < sc.ball.size(); ++head) {
    auto [x, d] = sc.ball[head];
    if (d >= st.ell) continue;
    auto visit = [&](std::span<const Vertex> nb) {
      for (Vertex w : nb) {
        if (sc.ball_stamp[w] == sc.ball_epoch || !is_remote(oracle, st, w)) continue;
        sc.ball_stamp[w] = sc.ball_epoch;
        sc.ball.emplace_back(w, d + 1);
      }
    };
    // is_remote may read other lists; remembered views survive that, the
    // oracle's single buffer does not.
    if (oracle.remembers_answers()) {
      visit(oracle.read_neighbors(x));
    } else {
      const std::vector<Vertex> nb = oracle.neighbors(x);
      visit(nb);
    }
  }
  return sc.ball;
}

}  // namespace detail

struct RemoteScan {
  Vertex leader = -1;
  std::size_t near_max = 0;  // |C(v)|: candidates within 1 of the best score
};

/// Leader election for a remote vertex over Γ_ell(v, G[R]).
inline RemoteScan remote_scan(QueryOracle& oracle, PartitionState& st, Vertex v) {
  if (!is_remote(oracle, st, v))
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not remote");
  const auto& order = detail::remote_ball(oracle, st, v);
  RemoteScan out;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> score;
  auto& clocks = st.scratch.clock;
  if (clocks.size() != static_cast<std::size_t>(st.n))
    clocks.assign(static_cast<std::size_t>(st.n), std::numeric_limits<double>::quiet_NaN());
  for (auto [u, d] : order) {
    if (std::isnan(clocks[u])) clocks[u] = st.clock(u);
    double m = clocks[u] - d;
    score.push_back(m);
    if (m > best || (m == best && u < out.leader)) {
      best = m;
      out.leader = u;
    }
  }
  for (double m : score)
    if (m >= best - 1) ++out.near_max;
  st.memo.leader.emplace(v, out.leader);
  return out;
}

inline Vertex remote_leader(QueryOracle& oracle, PartitionState& st, Vertex v) {
  if (auto it = st.memo.leader.find(v); it != st.memo.leader.end()) return it->second;
  return remote_scan(oracle, st, v).leader;
}

/// Γ_ell(L(v), G[R]), ascending: contains v's remote cluster whenever every
/// clock is below ell.
inline std::vector<Vertex> remote_cluster_superset(QueryOracle& oracle, PartitionState& st,
                                                   Vertex v) {
  Vertex leader = remote_leader(oracle, st, v);
  const auto& order = detail::remote_ball(oracle, st, leader);
  std::vector<Vertex> out;
  for (auto [x, d] : order) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

/// Edges from A to vertices outside A that satisfy `in_b`.
inline std::size_t cut_size_cluster_pair(QueryOracle& oracle, const std::vector<Vertex>& a_sorted,
                                         const std::function<bool(Vertex)>& in_b) {
  std::size_t count = 0;
  for (Vertex u : a_sorted)
    for (Vertex w : oracle.neighbors(u))
      if (!std::binary_search(a_sorted.begin(), a_sorted.end(), w) && in_b(w)) ++count;
  return count;
}

/// Every cluster of the graph, resolved through the local operations. Meant
/// for statistics and invariant checks on small graphs.
struct PartitionSnapshot {
  std::vector<ClusterDescriptor> clusters;  // core clusters first, then remote
  std::vector<int> cluster_index;           // per vertex
  std::vector<char> remote;                 // per vertex
  std::vector<Vertex> center;               // per vertex, -1 when remote
  std::size_t core_count = 0;
  std::size_t remote_vertices = 0;
  std::size_t remote_cut = 0;    // |K|: edges inside R between different remote clusters
  std::size_t boundary_cut = 0;  // |E(R, R̄)|
  double mean_near_max = 0;      // mean |C(v)| over remote v
};

inline PartitionSnapshot snapshot_partition(QueryOracle& oracle, PartitionState& st) {
  const Vertex n = st.n;
  PartitionSnapshot snap;
  snap.cluster_index.assign(static_cast<std::size_t>(n), -1);
  snap.remote.assign(static_cast<std::size_t>(n), 0);
  snap.center.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    const CenterInfo& ci = center_of(oracle, st, v);
    snap.remote[v] = ci.remote;
    if (!ci.remote) snap.center[v] = ci.center;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (snap.remote[v] || snap.cluster_index[v] >= 0) continue;
    const ClusterDescriptor& d = cluster_of(oracle, st, v);
    for (Vertex m : d.members) snap.cluster_index[m] = static_cast<int>(snap.clusters.size());
    snap.clusters.push_back(d);
  }
  snap.core_count = snap.clusters.size();
  std::unordered_map<Vertex, int> by_leader;
  double near_total = 0;
  std::vector<Vertex> leader(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (!snap.remote[v]) continue;
    ++snap.remote_vertices;
    RemoteScan rs = remote_scan(oracle, st, v);
    leader[v] = rs.leader;
    near_total += static_cast<double>(rs.near_max);
    auto [it, fresh] = by_leader.emplace(rs.leader, static_cast<int>(snap.clusters.size()));
    if (fresh) {
      ClusterDescriptor d;
      d.kind = ClusterKind::kRemote;
      d.anchor = d.root = rs.leader;
      snap.clusters.push_back(d);
    }
    snap.clusters[it->second].members.push_back(v);
    snap.cluster_index[v] = it->second;
  }
  if (snap.remote_vertices) near_total /= static_cast<double>(snap.remote_vertices);
  snap.mean_near_max = near_total;
  const Graph& g = oracle.unaccounted_graph();
  for (const Edge& e : g.edges()) {
    bool ru = snap.remote[e.lo], rv = snap.remote[e.hi];
    if (ru != rv) ++snap.boundary_cut;
    else if (ru && leader[e.lo] != leader[e.hi]) ++snap.remote_cut;
  }
  return snap;
}

/// One line per vertex: "v kind anchor cluster-root". Stable for equal seeds.
inline void dump_partition(std::ostream& out, QueryOracle& oracle, PartitionState& st) {
  for (Vertex v = 0; v < st.n; ++v) {
    if (is_remote(oracle, st, v)) {
      Vertex l = remote_leader(oracle, st, v);
      out << v << ' ' << cluster_kind_name(ClusterKind::kRemote) << ' ' << l << ' ' << l << '\n';
    } else {
      const ClusterDescriptor& d = cluster_of(oracle, st, v);
      out << v << ' ' << cluster_kind_name(d.kind) << ' ' << d.anchor << ' ' << d.root << '\n';
    }
  }
}

}  // namespace minorfree
