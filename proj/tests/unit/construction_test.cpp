#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "minorfree/construction.hpp"
#include "support/oracles.hpp"

using namespace minorfree;

namespace {

RelevantTree tree_of(const Graph& g, Vertex root, std::vector<Vertex> q) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  RelevantTree t = bfs_spanning_tree(g, all, root);
  t.relevant = std::move(q);
  return t;
}

Graph random_tree(Vertex n, int delta, std::mt19937_64& rng) {
  return oracle::random_connected_graph(n, delta, 0, rng);
}

// Checks parts are disjoint, connected in the tree, meet Q, and consecutive
// parts are adjacent.
void expect_valid_path(const RelevantTree& t, const PathMinorResult& r) {
  Graph tg = Graph::from_edges_auto(*std::max_element(t.vertices.begin(), t.vertices.end()) + 1,
                                    t.edges);
  std::set<Vertex> q(t.relevant.begin(), t.relevant.end()), used;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    EXPECT_TRUE(is_connected_set(tg, r.parts[i]));
    bool meets = false;
    for (Vertex v : r.parts[i]) {
      EXPECT_TRUE(used.insert(v).second);
      meets |= q.count(v) > 0;
    }
    EXPECT_TRUE(meets);
    if (i + 1 < r.parts.size()) {
      bool adjacent = false;
      for (Vertex v : r.parts[i])
        for (Vertex w : r.parts[i + 1]) adjacent |= tg.has_edge(v, w);
      EXPECT_TRUE(adjacent);
    }
  }
}

}  // namespace

TEST(PathMinor, PathWithRelevantEndpoints) {
  Graph p = Graph::from_edges_auto(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto t = tree_of(p, 0, {0, 4});
  auto r = path_minor_with_relevant(t);
  EXPECT_GE(r.parts.size(), 2u);
  expect_valid_path(t, r);
}

TEST(PathMinor, StarMergeTrace) {
  // center c = 2, leaves a = 0 < b = 1 < d = 3
  Graph s = Graph::from_edges_auto(4, {{2, 0}, {2, 1}, {2, 3}});
  auto r = path_minor_with_relevant(tree_of(s, 2, {0, 1}));
  ASSERT_EQ(r.parts.size(), 2u);
  EXPECT_EQ(r.parts[0], (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(r.parts[1], (std::vector<Vertex>{1}));
}

TEST(PathMinor, CompleteBinaryTreeLeaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < 31; ++v) e.emplace_back((v - 1) / 2, v);
  Graph bt = Graph::from_edges_auto(31, e);
  std::vector<Vertex> leaves;
  for (Vertex v = 15; v < 31; ++v) leaves.push_back(v);
  auto t = tree_of(bt, 0, leaves);
  auto r = path_minor_with_relevant(t);
  EXPECT_GE(r.parts.size(), 4u);
  expect_valid_path(t, r);
}

TEST(PathMinor, Errors) {
  Graph p = Graph::from_edges_auto(3, {{0, 1}, {1, 2}});
  auto t = tree_of(p, 0, {});
  EXPECT_THROW(path_minor_with_relevant(t), std::invalid_argument);
  RelevantTree broken{{0, 1, 2}, {{0, 1}}, 0, {0}};
  EXPECT_THROW(path_minor_with_relevant(broken), std::invalid_argument);
  RelevantTree cyclic{{0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 0}}, 0, {0}};
  EXPECT_THROW(path_minor_with_relevant(cyclic), std::invalid_argument);
}

TEST(PathMinor, FuzzLengthBound) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    Vertex n = std::uniform_int_distribution<Vertex>(1, 60)(rng);
    int delta = std::uniform_int_distribution<int>(2, 5)(rng);
    Graph g = random_tree(n, delta, rng);
    std::vector<Vertex> q;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 3 == 0) q.push_back(v);
    if (q.empty()) q.push_back(0);
    auto t = tree_of(g, 0, q);
    auto r = path_minor_with_relevant(t);
    expect_valid_path(t, r);
    EXPECT_GE(static_cast<double>(r.parts.size()) + 1e-9,
              std::log(static_cast<double>(q.size())) / std::log(static_cast<double>(delta)));
  }
}

TEST(StarMinor, StarRootedAtCenter) {
  Graph s = Graph::from_edges_auto(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto r = star_minor_with_relevant(tree_of(s, 0, {1, 2, 3, 4, 5}), 1);
  EXPECT_EQ(r.leaves.size(), 4u);
  EXPECT_TRUE(r.center_meets_relevant);
  EXPECT_GE(r.leaves.size(), 5u / 2);
}

TEST(StarMinor, SinglePath) {
  Graph p = Graph::from_edges_auto(4, {{0, 1}, {1, 2}, {2, 3}});
  // The lone leaf is folded into the center so the center meets Q.
  auto r = star_minor_with_relevant(tree_of(p, 0, {3}), 3);
  EXPECT_TRUE(r.leaves.empty());
  EXPECT_EQ(r.center, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(r.center_meets_relevant);
  // Without folding, the path keeps its leaf.
  auto kept = star_minor_with_relevant(tree_of(p, 0, {3}), 3, false);
  ASSERT_EQ(kept.leaves.size(), 1u);
  EXPECT_EQ(kept.leaves[0], std::vector<Vertex>{3});
  EXPECT_EQ(kept.center, (std::vector<Vertex>{0, 1, 2}));
  // A relevant vertex inside the center needs no folding.
  auto inner = star_minor_with_relevant(tree_of(p, 0, {1, 3}), 3);
  ASSERT_EQ(inner.leaves.size(), 1u);
  EXPECT_TRUE(inner.center_meets_relevant);
}

TEST(StarMinor, Errors) {
  Graph p = Graph::from_edges_auto(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THROW(star_minor_with_relevant(tree_of(p, 0, {}), 3), std::invalid_argument);
  EXPECT_THROW(star_minor_with_relevant(tree_of(p, 0, {3}), 2), std::invalid_argument);
}

TEST(StarMinor, FuzzLeafBound) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    Vertex n = std::uniform_int_distribution<Vertex>(2, 60)(rng);
    Graph g = random_tree(n, std::uniform_int_distribution<int>(2, 5)(rng), rng);
    Vertex root = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
    std::vector<Vertex> q;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 2) q.push_back(v);
    if (q.empty()) q.push_back(root);
    auto t = tree_of(g, root, q);
    auto d = bfs_distances(g, root);
    int h = std::max(1, *std::max_element(d.begin(), d.end()));
    auto r = star_minor_with_relevant(t, h);
    EXPECT_GE(r.leaves.size(), q.size() / (2 * static_cast<std::size_t>(h)));
    std::set<Vertex> qs(q.begin(), q.end());
    EXPECT_TRUE(is_connected_set(g, r.center));
    bool center_meets = false;
    for (Vertex c : r.center) center_meets |= qs.count(c) > 0;
    EXPECT_TRUE(center_meets);
    EXPECT_TRUE(r.center_meets_relevant);
    for (const auto& leaf : r.leaves) {
      EXPECT_TRUE(qs.count(leaf[0]));
      bool adj = false;
      for (Vertex c : r.center) adj |= g.has_edge(c, leaf[0]);
      EXPECT_TRUE(adj);
    }
  }
}

TEST(Monotone, Examples) {
  auto a = monotone_subsequence({1, 2, 3, 4});
  EXPECT_EQ(a.positions.size(), 4u);
  EXPECT_TRUE(a.increasing);
  auto b = monotone_subsequence({4, 3, 2, 1});
  EXPECT_EQ(b.positions.size(), 4u);
  EXPECT_FALSE(b.increasing);
  auto c = monotone_subsequence({2, 1, 4, 3});
  EXPECT_EQ(c.positions.size(), 2u);
  EXPECT_THROW(monotone_subsequence({}), std::invalid_argument);
}

TEST(Monotone, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<int> seq(n);
    std::vector<std::int64_t> s64(n);
    for (int i = 0; i < n; ++i) s64[i] = seq[i] = std::uniform_int_distribution<int>(0, 6)(rng);
    auto r = monotone_subsequence(s64);
    EXPECT_EQ(static_cast<int>(r.positions.size()), oracle::longest_monotone_exhaustive(seq));
    for (std::size_t i = 1; i < r.positions.size(); ++i) {
      EXPECT_LT(r.positions[i - 1], r.positions[i]);
      if (r.increasing) EXPECT_LE(s64[r.positions[i - 1]], s64[r.positions[i]]);
      else EXPECT_GE(s64[r.positions[i - 1]], s64[r.positions[i]]);
    }
  }
}

TEST(Matching, Examples) {
  std::vector<std::vector<int>> ladder(5);
  for (int i = 0; i < 5; ++i) ladder[i] = {i};
  EXPECT_EQ(cross_matching(5, 5, ladder).size(), 5u);
  std::vector<std::vector<int>> one(4, std::vector<int>{0});
  EXPECT_EQ(cross_matching(4, 3, one).size(), 1u);
}

TEST(Matching, AgreesWithMaxFlow) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    int l = std::uniform_int_distribution<int>(1, 12)(rng);
    int r = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<std::vector<int>> adj(l);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < r; ++j)
        if (rng() % 4 == 0) {
          adj[i].push_back(j);
          pairs.emplace_back(i, j);
        }
    auto m = cross_matching(l, r, adj);
    EXPECT_EQ(static_cast<int>(m.size()), oracle::max_matching_by_flow(l, r, pairs));
    std::set<int> ls, rs;
    for (auto [i, j] : m) {
      EXPECT_TRUE(ls.insert(i).second);
      EXPECT_TRUE(rs.insert(j).second);
      EXPECT_NE(std::find(adj[i].begin(), adj[i].end(), j), adj[i].end());
    }
  }
}

TEST(GridFromCut, SixteenRungLadder) {
  Graph ladder = make_grid(16).graph;
  std::vector<Vertex> top(16), bottom(16);
  std::iota(top.begin(), top.end(), 0);
  std::iota(bottom.begin(), bottom.end(), 16);
  CutInstance c{&ladder, top, bottom, 4, 15, std::nullopt};
  auto emb = grid_minor_from_cut(c);
  ASSERT_TRUE(emb);
  EXPECT_TRUE(verify_embedding(ladder, make_grid(4).graph, *emb));
}

TEST(GridFromCut, SingleCrossEdgeFails) {
  Graph e = Graph::from_edges_auto(2, {{0, 1}});
  EXPECT_FALSE(grid_minor_from_cut({&e, {0}, {1}, 2, 0, std::nullopt}));
  EXPECT_THROW(grid_minor_from_cut({&e, {0}, {0}, 2, 0, std::nullopt}), std::invalid_argument);
}

TEST(CircusFromCut, SpokedFan) {
  // apex 0, spokes 1..m, path m+1..2m; spoke i joins apex and path vertex m+i.
  const Vertex m = 9;
  std::vector<Edge> e;
  for (Vertex i = 1; i <= m; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, m + i);
  }
  for (Vertex i = m + 1; i < 2 * m; ++i) e.emplace_back(i, i + 1);
  Graph g = Graph::from_edges_auto(2 * m + 1, e);
  std::vector<Vertex> v1(m + 1), v2(m);
  std::iota(v1.begin(), v1.end(), 0);
  std::iota(v2.begin(), v2.end(), m + 1);
  auto emb = circus_minor_from_cut({&g, v1, v2, 3, 1, 0});
  ASSERT_TRUE(emb);
  EXPECT_TRUE(verify_embedding(g, make_circus(3).graph, *emb));
  EXPECT_THROW(circus_minor_from_cut({&g, v1, v2, 3, 0, 0}), std::invalid_argument);
}

TEST(CircusFromCut, SingleCrossEdgeAndKOne) {
  Graph e = Graph::from_edges_auto(2, {{0, 1}});
  EXPECT_FALSE(circus_minor_from_cut({&e, {0}, {1}, 2, 0, std::nullopt}));
  Graph p = Graph::from_edges_auto(3, {{0, 1}, {1, 2}});
  auto emb = circus_minor_from_cut({&p, {0}, {1, 2}, 1, 0, std::nullopt});
  ASSERT_TRUE(emb);
  EXPECT_TRUE(verify_embedding(p, make_circus(1).graph, *emb));
}

TEST(K2kFromCut, Examples) {
  Graph k23 = make_k2k(3).graph;
  auto emb = k2k_minor_from_cut({&k23, {0}, {1, 2, 3, 4}, 1, 0, std::nullopt});
  ASSERT_TRUE(emb);
  EXPECT_TRUE(verify_embedding(k23, make_k2k(1).graph, *emb));

  // Book graph: k triangles sharing edge {a, b}.
  const int k = 4;
  std::vector<Edge> e{{0, 1}};
  for (int i = 0; i < k; ++i) {
    e.emplace_back(0, 2 + i);
    e.emplace_back(1, 2 + i);
  }
  Graph book = Graph::from_edges_auto(k + 2, e);
  std::vector<Vertex> rest(k + 1);
  std::iota(rest.begin(), rest.end(), 1);
  auto b = k2k_minor_from_cut({&book, {0}, rest, k, 0, std::nullopt});
  ASSERT_TRUE(b);
  EXPECT_TRUE(verify_embedding(book, make_k2k(k).graph, *b));

  Graph p = Graph::from_edges_auto(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(k2k_minor_from_cut({&p, {0}, {1, 2}, 2, 0, std::nullopt}));
}

TEST(K2kFromCut, GuaranteedRegimeOnRandomHosts) {
  std::mt19937_64 rng(5);
  int attempts = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Vertex n = std::uniform_int_distribution<Vertex>(6, 30)(rng);
    Graph g = oracle::random_connected_graph(n, 4, n, rng);
    // V1 = ball of radius 1 around a vertex, V2 = a connected remainder component.
    Vertex c = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
    std::vector<Vertex> v1{c};
    for (Vertex w : g.neighbors(c)) v1.push_back(w);
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (std::find(v1.begin(), v1.end(), v) == v1.end()) rest.push_back(v);
    if (rest.empty()) continue;
    Subgraph sub = induced_subgraph(g, rest);
    auto comps = connected_components(sub.graph);
    std::vector<Vertex> v2;
    for (Vertex x : comps[0]) v2.push_back(sub.to_host[x]);
    std::set<Vertex> s2(v2.begin(), v2.end());
    int cut = 0;
    for (Vertex v : v1)
      for (Vertex w : g.neighbors(v)) cut += s2.count(w);
    const int k = 1, h = 1;
    if (cut <= 2 * g.delta() * k * h) continue;
    ++attempts;
    auto emb = k2k_minor_from_cut({&g, v1, v2, k, h, c});
    ASSERT_TRUE(emb);
    EXPECT_TRUE(verify_embedding(g, make_k2k(k).graph, *emb));
  }
  (void)attempts;
}

TEST(K2kFromCut, PendantFirstSideUsesExactFallback) {
  // A 4-cycle 0-1-4-2 with vertex 3 hanging off 0: one crossing edge, yet C4 is there.
  Graph g = Graph::from_edges_auto(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}});
  auto emb = k2k_minor_from_cut({&g, {3}, {0, 1, 2, 4}, 2, 0, std::nullopt});
  ASSERT_TRUE(emb);
  EXPECT_TRUE(verify_embedding(g, make_k2k(2).graph, *emb));
  // A path has no C4 however the cut is drawn.
  Graph p = Graph::from_edges_auto(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_FALSE(k2k_minor_from_cut({&p, {0}, {1, 2, 3}, 2, 0, std::nullopt}));
}
