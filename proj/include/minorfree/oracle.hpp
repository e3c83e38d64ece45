#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "minorfree/graph.hpp"

namespace minorfree {

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("query budget of " + std::to_string(budget) + " exhausted") {}
};

/// Buckets that neighbor queries are attributed to.
enum class QueryPhase : int {
  kPartitionInit = 0,
  kSampling,
  kClusterResolution,
  kCutChecks,
  kMinorChecks,
  kCount
};

inline const char* phase_name(QueryPhase p) {
  switch (p) {
    case QueryPhase::kPartitionInit: return "partition_init";
    case QueryPhase::kSampling: return "sampling";
    case QueryPhase::kClusterResolution: return "cluster_resolution";
    case QueryPhase::kCutChecks: return "cut_checks";
    case QueryPhase::kMinorChecks: return "minor_checks";
    default: return "?";
  }
}

/// Counting access to f_G. This is the only way the tester touches the graph.
class QueryOracle {
 public:
  explicit QueryOracle(const Graph& g, std::optional<std::uint64_t> budget = std::nullopt)
      : graph_(&g), budget_(budget) {}

  Vertex size() const { return graph_->size(); }
  int delta() const { return graph_->delta(); }

  std::optional<Vertex> neighbor(Vertex v, int i) {
    if (v < 0 || v >= graph_->size())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    if (i < 0 || i >= graph_->delta())
      throw std::out_of_range("slot " + std::to_string(i) + " out of range");
    if (budget_ && count_ >= *budget_) throw BudgetExhausted(*budget_);
    ++count_;
    ++per_phase_[static_cast<int>(phase_)];
    return graph_->slot(v, i);
  }

  /// All neighbors of v, querying slots in order until the first sentinel.
  /// With answer memory on, a list read once is replayed without queries.
  std::vector<Vertex> neighbors(Vertex v) {
    auto view = read_neighbors(v);
    return {view.begin(), view.end()};
  }

  /// Same as neighbors() without the copy. The view stays valid while answer
  /// memory is on; otherwise only until the next call.
  std::span<const Vertex> read_neighbors(Vertex v) {
    if (remember_) {
      if (auto it = known_.find(v); it != known_.end()) return it->second;
    }
    buffer_.clear();
    for (int i = 0; i < delta(); ++i) {
      auto w = neighbor(v, i);
      if (!w) break;
      buffer_.push_back(*w);
    }
    if (remember_) return known_.emplace(v, buffer_).first->second;
    return buffer_;
  }

  /// Slot i of v, answered from memory when the list of v is known.
  std::optional<Vertex> lookup(Vertex v, int i) {
    if (remember_) {
      if (auto it = known_.find(v); it != known_.end()) {
        if (i < 0 || i >= delta()) throw std::out_of_range("slot " + std::to_string(i) + " out of range");
        if (static_cast<std::size_t>(i) < it->second.size()) return it->second[i];
        return std::nullopt;
      }
    }
    return neighbor(v, i);
  }

  /// Keeps answers of neighbors() so that repeated reads cost nothing. The
  /// counter still charges every neighbor() call.
  void remember_answers(bool on) {
    remember_ = on;
    if (!on) known_.clear();
  }
  bool remembers_answers() const { return remember_; }

  std::uint64_t count() const { return count_; }
  std::uint64_t count(QueryPhase p) const { return per_phase_[static_cast<int>(p)]; }
  QueryPhase phase() const { return phase_; }
  void set_phase(QueryPhase p) { phase_ = p; }
  std::optional<std::uint64_t> budget() const { return budget_; }

  /// Ground truth, for test oracles and harness bookkeeping only.
  const Graph& unaccounted_graph() const { return *graph_; }

 private:
  const Graph* graph_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t count_ = 0;
  std::array<std::uint64_t, static_cast<int>(QueryPhase::kCount)> per_phase_{};
  QueryPhase phase_ = QueryPhase::kPartitionInit;
  bool remember_ = false;
  std::unordered_map<Vertex, std::vector<Vertex>> known_;
  std::vector<Vertex> buffer_;
};

/// Switches the oracle's attribution bucket for the lifetime of the guard.
class PhaseScope {
 public:
  PhaseScope(QueryOracle& o, QueryPhase p) : oracle_(o), saved_(o.phase()) { o.set_phase(p); }
  ~PhaseScope() { oracle_.set_phase(saved_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  QueryOracle& oracle_;
  QueryPhase saved_;
};

struct BfsEntry {
  Vertex vertex;
  int distance;
  std::optional<Vertex> parent;

  bool operator==(const BfsEntry&) const = default;
};

/// Breadth-first traversal in canonical order (queue order, neighbors by
/// ascending id). Stops after `depth` levels or once `vertex_cap` vertices
/// have been visited.
inline std::vector<BfsEntry> canonical_bfs(QueryOracle& oracle, Vertex v, int depth,
                                           std::optional<std::size_t> vertex_cap = std::nullopt) {
  std::vector<BfsEntry> order{{v, 0, std::nullopt}};
  std::unordered_set<Vertex> seen{v};
  auto cap = vertex_cap.value_or(static_cast<std::size_t>(oracle.size()));
  if (cap == 0) return {};
  for (std::size_t head = 0; head < order.size() && order.size() < cap; ++head) {
    if (order[head].distance >= depth) break;
    Vertex x = order[head].vertex;
    for (int i = 0; i < oracle.delta() && order.size() < cap; ++i) {
      auto w = oracle.lookup(x, i);
      if (!w) break;
      if (!seen.insert(*w).second) continue;
      order.push_back({*w, order[head].distance + 1, x});
    }
  }
  return order;
}

/// Exact hop distance when it is at most `cap`, otherwise nullopt.
inline std::optional<int> distance(QueryOracle& oracle, Vertex u, Vertex v, int cap) {
  if (u == v) return 0;
  // Bidirectional BFS, expanding the smaller frontier first.
  std::unordered_map<Vertex, int> du{{u, 0}}, dv{{v, 0}};
  auto find = [](const std::unordered_map<Vertex, int>& s, Vertex x) -> int {
    auto it = s.find(x);
    return it == s.end() ? -1 : it->second;
  };
  std::vector<Vertex> fu{u}, fv{v};
  int ru = 0, rv = 0;
  while (ru + rv < cap && !fu.empty() && !fv.empty()) {
    bool grow_u = fu.size() <= fv.size();
    auto& frontier = grow_u ? fu : fv;
    auto& mine = grow_u ? du : dv;
    auto& theirs = grow_u ? dv : du;
    int& radius = grow_u ? ru : rv;
    std::vector<Vertex> next;
    int best = -1;
    for (Vertex x : frontier) {
      for (Vertex w : oracle.neighbors(x)) {
        if (find(mine, w) >= 0) continue;
        mine.emplace(w, radius + 1);
        next.push_back(w);
        int other = find(theirs, w);
        if (other >= 0 && (best < 0 || radius + 1 + other < best)) best = radius + 1 + other;
      }
    }
    ++radius;
    if (best >= 0) return best <= cap ? std::optional<int>(best) : std::nullopt;
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// Γ_r(v): all vertices within r hops, ascending.
inline std::vector<Vertex> ball(QueryOracle& oracle, Vertex v, int r) {
  std::vector<Vertex> out;
  for (const auto& e : canonical_bfs(oracle, v, r)) out.push_back(e.vertex);
  std::sort(out.begin(), out.end());
  return out;
}

/// G[S] materialized through the oracle (|S|·Δ queries at most).
inline Subgraph induced_subgraph(QueryOracle& oracle, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Subgraph out;
  out.to_host = std::move(vertices);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < static_cast<Vertex>(out.to_host.size()); ++i) {
    for (Vertex w : oracle.neighbors(out.to_host[i])) {
      if (w <= out.to_host[i]) continue;
      if (auto j = out.to_local(w)) edges.emplace_back(i, *j);
    }
  }
  out.graph = Graph::from_edges(static_cast<Vertex>(out.to_host.size()),
                                std::max(oracle.delta(), 1), edges);
  return out;
}

}  // namespace minorfree
