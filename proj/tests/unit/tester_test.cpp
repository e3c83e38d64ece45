#include <gtest/gtest.h>

#include <map>
#include <random>

#include "minorfree/tester.hpp"
#include "support/oracles.hpp"

using namespace minorfree;

namespace {

// Small-graph settings: gamma = 1 keeps ell short and a large alpha_coeff
// brings in enough centers that clusters are proper parts of the graph.
TesterConfig busy_tester(const ForbiddenFamily& fam, double sample_coeff = 0.05) {
  TesterConfig cfg;
  cfg.epsilon = 0.5;
  cfg.family = &fam;
  cfg.sample_coeff = sample_coeff;
  cfg.gamma_coeff = 2.0;
  cfg.alpha_coeff = 1e4;
  cfg.partition.const_b = 2.0;
  cfg.partition.const_c = 0.002;
  cfg.partition.center_count_coeff = 0.5;
  cfg.partition.y_coeff = 50;
  cfg.partition.mark_probability = 0.3;
  return cfg;
}

// A tree with a K_{2,3} hung off vertex 0.
Graph tree_with_k23(Vertex tree_n, std::mt19937_64& rng) {
  Graph tree = oracle::random_connected_graph(tree_n, 3, 0, rng);
  std::vector<Edge> edges = tree.edges();
  const Vertex a = tree_n, b = tree_n + 1;
  for (Vertex c = tree_n + 2; c < tree_n + 5; ++c) {
    edges.emplace_back(a, c);
    edges.emplace_back(b, c);
  }
  edges.emplace_back(0, a);
  return Graph::from_edges(tree_n + 5, 4, edges);
}

}  // namespace

TEST(TesterConfigTest, RejectsBadParameters) {
  auto fam = parse_family("k23");
  TesterConfig cfg;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);  // no family
  cfg.family = &fam;
  cfg.epsilon = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.1;
  cfg.alpha_coeff = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.alpha_coeff = 1;
  cfg.sample_coeff = 0;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(SampleEdgeTest, SingleEdgeAlwaysReturned) {
  Graph g = Graph::from_edges(2, 3, {Edge(0, 1)});
  QueryOracle o(g);
  auto fam = parse_family("k23");
  TesterConfig cfg;
  cfg.family = &fam;
  MinorFreenessTester t(o, cfg, 4);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(t.sample_edge(), Edge(0, 1));
}

TEST(SampleEdgeTest, RegularGraphNeedsOneProbe) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < 12; ++v) e.emplace_back(v, (v + 1) % 12);
  Graph g = Graph::from_edges(12, 2, e);
  QueryOracle o(g);
  auto fam = parse_family("k23");
  TesterConfig cfg;
  cfg.family = &fam;
  MinorFreenessTester t(o, cfg, 9);
  for (int i = 0; i < 100; ++i) {
    auto before = o.count();
    ASSERT_TRUE(t.sample_edge());
    EXPECT_EQ(o.count() - before, 1u);
  }
}

TEST(SampleEdgeTest, EdgelessGraphGivesUp) {
  Graph g = Graph::from_edges(5, 2, {});
  QueryOracle o(g);
  auto fam = parse_family("k23");
  TesterConfig cfg;
  cfg.family = &fam;
  MinorFreenessTester t(o, cfg, 1);
  EXPECT_FALSE(t.sample_edge());
}

TEST(SampleEdgeTest, UniformOverTwentyEdges) {
  // A path on 21 vertices with Delta = 3 leaves most slots empty.
  std::vector<Edge> e;
  for (Vertex v = 0; v < 20; ++v) e.emplace_back(v, v + 1);
  Graph g = Graph::from_edges(21, 3, e);
  QueryOracle o(g);
  auto fam = parse_family("k23");
  TesterConfig cfg;
  cfg.family = &fam;
  MinorFreenessTester t(o, cfg, 2024);
  std::map<Edge, int> freq;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) ++freq[*t.sample_edge()];
  ASSERT_EQ(freq.size(), 20u);
  const double expect = samples / 20.0;
  double chi2 = 0;
  for (const auto& [edge, c] : freq) chi2 += (c - expect) * (c - expect) / expect;
  EXPECT_LT(chi2, 43.82);  // 19 degrees of freedom, p = 0.001
}

TEST(TesterTest, TreesAcceptForK23) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_connected_graph(60 + 10 * trial, 3, 0, rng);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      QueryOracle o(g);
      auto cfg = busy_tester(fam);
      Verdict v = test_minor_freeness(o, cfg, seed);
      EXPECT_NE(v.kind, VerdictKind::kReject) << "trial " << trial << " seed " << seed;
    }
  }
}

TEST(TesterTest, DefaultsAcceptSmallTree) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(5);
  Graph g = oracle::random_connected_graph(40, 3, 0, rng);
  QueryOracle o(g);
  TesterConfig cfg;
  cfg.family = &fam;
  Verdict v = test_minor_freeness(o, cfg, 0);
  EXPECT_TRUE(v.accepted()) << v.reason;
  EXPECT_EQ(v.samples_checked, v.samples_planned);
}

TEST(TesterTest, ForcedEdgeOnInternalK23Rejects) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(8);
  Graph g = tree_with_k23(30, rng);
  QueryOracle o(g);
  TesterConfig cfg;
  cfg.family = &fam;
  // At default constants the whole graph is a single cluster.
  MinorFreenessTester t(o, cfg, 3);
  auto r = t.check_edge(Edge(30, 32));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->step, "cluster_minor");
  ASSERT_TRUE(r->embedding);
  EXPECT_TRUE(verify_embedding(g, fam.members[0].graph, *r->embedding));
  Verdict full = test_minor_freeness(o, cfg, 3);
  EXPECT_TRUE(full.rejected());
  EXPECT_TRUE(recheck_verdict(g, fam, full));
}

TEST(TesterTest, RejectionsAlwaysRecheck) {
  auto fam = parse_family("outerplanar");
  std::mt19937_64 rng(77);
  int rejections = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_connected_graph(150, 4, 60, rng);
    QueryOracle o(g);
    auto cfg = busy_tester(fam, 0.2);
    cfg.partition.const_c = 0.05;  // clusters large enough to hold K4 or K2,3
    Verdict v = test_minor_freeness(o, cfg, static_cast<std::uint64_t>(trial));
    if (!v.rejected()) continue;
    ++rejections;
    auto ok = recheck_verdict(g, fam, v);
    EXPECT_TRUE(ok) << ok.condition << ": " << ok.detail;
  }
  EXPECT_GT(rejections, 0);
}

// Two complete binary trees of depth 8 whose leaves are matched in order.
// With the roots as centers each tree is a whole-cell cluster, and the 256
// leaf edges exceed the K2,3 threshold 2 * 3 * 3 * 8 = 144.
TEST(TesterTest, LargePairCutYieldsCertificateAndEmbedding) {
  const Vertex half = 511;
  std::vector<Edge> edges;
  for (Vertex v = 1; v < half; ++v) {
    edges.emplace_back((v - 1) / 2, v);
    edges.emplace_back(half + (v - 1) / 2, half + v);
  }
  for (Vertex leaf = 255; leaf < half; ++leaf) edges.emplace_back(leaf, half + leaf);
  Graph g = Graph::from_edges(2 * half, 3, edges);
  auto fam = parse_family("k23");
  TesterConfig cfg;
  cfg.family = &fam;
  QueryOracle o(g);
  PartitionFixture fx;
  fx.centers = std::vector<Vertex>{0, half};
  fx.ell = 8;
  fx.t = 600;
  fx.marked = std::vector<Vertex>{};
  MinorFreenessTester t(o, cfg, 0);
  t.adopt_partition(fx.apply(o, cfg.partition));
  EXPECT_DOUBLE_EQ(t.f(), 144.0);
  auto r = t.check_edge(Edge(255, half + 255));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->step, "pair_cut");
  ASSERT_TRUE(r->certificate);
  EXPECT_EQ(r->certificate->crossing.size(), 256u);
  auto ok = recheck_certificate(g, *r->certificate);
  EXPECT_TRUE(ok) << ok.condition << ": " << ok.detail;
  ASSERT_TRUE(r->embedding);
  EXPECT_TRUE(verify_embedding(g, fam.members[0].graph, *r->embedding));
  EXPECT_TRUE(recheck_verdict(g, fam, *r));
}

TEST(CertificateRecheckTest, AcceptsValidAndCatchesDefects) {
  // Two stars joined by three edges.
  Graph g = Graph::from_edges(6, 3, {Edge(0, 1), Edge(0, 2), Edge(3, 4), Edge(3, 5), Edge(1, 4),
                                     Edge(2, 5), Edge(0, 3)});
  CutCertificate c{{0, 1, 2}, {3, 4, 5}, 0, 1, 2.0, {Edge(0, 3), Edge(1, 4), Edge(2, 5)}};
  EXPECT_TRUE(recheck_certificate(g, c));
  auto bad = c;
  bad.f = 3;  // not strictly larger
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.second = {2, 3, 4, 5};  // overlap
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.crossing[0] = Edge(0, 4);  // not an edge
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.first = {1, 2};  // disconnected
  bad.first_root = 1;
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.height_bound = 0;
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.crossing.push_back(Edge(0, 3));  // duplicate
  bad.f = 2;
  EXPECT_FALSE(recheck_certificate(g, bad));
}

TEST(QueryAccountingTest, BreakdownSumsToTotal) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_connected_graph(200, 3, 20, rng);
    QueryOracle o(g);
    auto cfg = busy_tester(fam);
    Verdict v = test_minor_freeness(o, cfg, static_cast<std::uint64_t>(trial));
    std::uint64_t sum = 0;
    for (auto c : v.queries.per_phase) sum += c;
    EXPECT_EQ(sum, v.queries.total);
    EXPECT_EQ(v.queries.total, o.count());
    EXPECT_EQ(v.queries.partition() + v.queries.checks() + v.queries.phase(QueryPhase::kSampling),
              v.queries.total);
  }
}

TEST(QueryAccountingTest, ZeroSamplesMeansInitOnly) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(3);
  Graph g = oracle::random_connected_graph(100, 3, 10, rng);
  QueryOracle o(g);
  auto cfg = busy_tester(fam, 0.0);
  Verdict v = test_minor_freeness(o, cfg, 1);
  EXPECT_TRUE(v.accepted());
  EXPECT_EQ(v.samples_planned, 0u);
  EXPECT_EQ(v.queries.total, v.queries.phase(QueryPhase::kPartitionInit));
}

TEST(QueryAccountingTest, DoublingSamplesAtMostDoublesWork) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 8; ++trial) {
    Graph g = oracle::random_connected_graph(300, 3, 0, rng);
    auto run = [&](double coeff) {
      QueryOracle o(g);
      auto cfg = busy_tester(fam, coeff);
      Verdict v = test_minor_freeness(o, cfg, 5);
      return v.queries.total - v.queries.phase(QueryPhase::kPartitionInit);
    };
    EXPECT_LE(run(0.02), 2 * run(0.01) + 1) << "trial " << trial;
  }
}

TEST(TesterTest, DeterministicPerSeed) {
  auto fam = parse_family("outerplanar");
  std::mt19937_64 rng(40);
  Graph g = oracle::random_connected_graph(180, 4, 50, rng);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    QueryOracle o1(g), o2(g);
    auto cfg = busy_tester(fam, 0.2);
    Verdict a = test_minor_freeness(o1, cfg, seed);
    Verdict b = test_minor_freeness(o2, cfg, seed);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.queries.per_phase, b.queries.per_phase);
    EXPECT_EQ(witness_hash(a), witness_hash(b));
    EXPECT_EQ(verdict_json(a, fam).dump(), verdict_json(b, fam).dump());
  }
}

TEST(TesterTest, BudgetExhaustionIsInconclusive) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(2);
  Graph g = oracle::random_connected_graph(100, 3, 0, rng);
  QueryOracle o(g, 10);
  TesterConfig cfg;
  cfg.family = &fam;
  Verdict v = test_minor_freeness(o, cfg, 0);
  EXPECT_EQ(v.kind, VerdictKind::kInconclusive);
  EXPECT_NE(v.reason.find("budget"), std::string::npos);
}

TEST(TesterTest, JsonReportShape) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(8);
  Graph g = tree_with_k23(20, rng);
  QueryOracle o(g);
  TesterConfig cfg;
  cfg.family = &fam;
  Verdict v = test_minor_freeness(o, cfg, 0);
  ASSERT_TRUE(v.rejected());
  auto j = verdict_json(v, fam);
  EXPECT_EQ(j["verdict"], "reject");
  EXPECT_EQ(j["payload"], "embedding");
  EXPECT_EQ(j["embedding"]["branch_sets"].size(), 5u);
  EXPECT_EQ(j["queries"]["total"].get<std::uint64_t>(), v.queries.total);
  EXPECT_NE(witness_hash(v), 0u);
}

TEST(ProfileInstantiationTest, K2kThreshold) {
  auto fam = parse_family("k23");
  std::mt19937_64 rng(1);
  Graph g = oracle::random_connected_graph(500, 4, 0, rng);
  QueryOracle o(g);
  TesterConfig cfg;
  cfg.family = &fam;
  MinorFreenessTester t(o, cfg, 6);
  EXPECT_DOUBLE_EQ(t.f(), 2.0 * 4 * 3 * t.ell());
  EXPECT_EQ(t.planned_samples(), static_cast<std::size_t>(std::ceil(t.f() / cfg.epsilon)));
}
