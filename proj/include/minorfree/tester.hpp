#pragma once

// The one-sided minor-freeness tester. It samples edges, resolves the clusters
// of their endpoints through the local partition, and rejects only with
// evidence: a verified minor embedding, or a cut certificate whose size
// exceeds the separability bound of the forbidden family.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minorfree/construction.hpp"
#include "minorfree/family.hpp"
#include "minorfree/graph.hpp"
#include "minorfree/minor.hpp"
#include "minorfree/oracle.hpp"
#include "minorfree/partition.hpp"

namespace minorfree {

struct TesterConfig {
  double epsilon = 0.1;
  const ForbiddenFamily* family = nullptr;
  double sample_coeff = 1.0;  // samples = ceil(sample_coeff * f / epsilon)
  double gamma_coeff = 1.0;   // gamma = gamma_coeff * epsilon
  // alpha = alpha_coeff * epsilon / f. The default makes 500 f alpha n Delta
  // equal half of epsilon n Delta, the budget the soundness argument allows
  // for edges cut by the partition.
  double alpha_coeff = 1e-3;
  // Remaining partition constants; gamma, alpha and seed are derived per run.
  PartitionConfig partition;
  std::optional<std::uint64_t> query_budget;
  // Replay adjacency lists already read instead of querying them again.
  bool reuse_answers = true;

  void validate() const {
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!family) throw std::invalid_argument("tester needs a forbidden family");
    if (!family->profile.usable())
      throw std::invalid_argument("family " + family->name + " has no separability profile");
    if (!(sample_coeff >= 0)) throw std::invalid_argument("sample_coeff must be nonnegative");
    if (!(gamma_coeff > 0) || !(alpha_coeff > 0))
      throw std::invalid_argument("gamma_coeff and alpha_coeff must be positive");
  }
};

enum class VerdictKind { kAccept, kReject, kInconclusive };

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::kAccept: return "accept";
    case VerdictKind::kReject: return "reject";
    case VerdictKind::kInconclusive: return "inconclusive";
  }
  return "?";
}

/// Two disjoint connected vertex sets with more than `f` edges between them.
/// The first set has a BFS tree from `first_root` of height at most `height_bound`.
struct CutCertificate {
  std::vector<Vertex> first, second;  // sorted
  Vertex first_root = 0;
  double height_bound = 0;
  double f = 0;
  std::vector<Edge> crossing;  // sorted
};

struct QueryReport {
  std::uint64_t total = 0;
  std::array<std::uint64_t, static_cast<int>(QueryPhase::kCount)> per_phase{};

  std::uint64_t phase(QueryPhase p) const { return per_phase[static_cast<int>(p)]; }
  /// Partition work: setup plus cluster resolution.
  std::uint64_t partition() const {
    return phase(QueryPhase::kPartitionInit) + phase(QueryPhase::kClusterResolution);
  }
  /// Check work: cut counting plus cluster minor checks.
  std::uint64_t checks() const {
    return phase(QueryPhase::kCutChecks) + phase(QueryPhase::kMinorChecks);
  }
};

inline QueryReport query_report(const QueryOracle& oracle) {
  QueryReport r;
  r.total = oracle.count();
  for (int p = 0; p < static_cast<int>(QueryPhase::kCount); ++p)
    r.per_phase[p] = oracle.count(static_cast<QueryPhase>(p));
  return r;
}

struct Verdict {
  VerdictKind kind = VerdictKind::kAccept;
  std::string step;    // which check fired: cluster_minor, cell_cut, pair_cut, super_cut
  std::string reason;  // for inconclusive runs
  int member = -1;     // family member of the embedding
  std::optional<MinorEmbedding> embedding;
  std::optional<CutCertificate> certificate;
  QueryReport queries;
  std::size_t samples_planned = 0;
  std::size_t samples_checked = 0;
  int ell = 0;
  double f = 0;
  double t = 0;
  std::size_t centers = 0;
  std::size_t unconnected_cuts = 0;  // large cuts skipped for lack of a connected side

  bool accepted() const { return kind == VerdictKind::kAccept; }
  bool rejected() const { return kind == VerdictKind::kReject; }
};

/// Independent check of a certificate against the graph itself.
inline VerifyResult recheck_certificate(const Graph& g, const CutCertificate& c) {
  if (c.first.empty() || c.second.empty())
    return VerifyResult::fail("nonempty", "a certificate side is empty");
  std::vector<char> side(static_cast<std::size_t>(g.size()), 0);
  for (Vertex v : c.first) {
    if (v < 0 || v >= g.size()) return VerifyResult::fail("range", "vertex out of range");
    side[v] = 1;
  }
  for (Vertex v : c.second) {
    if (v < 0 || v >= g.size()) return VerifyResult::fail("range", "vertex out of range");
    if (side[v]) return VerifyResult::fail("disjoint", "vertex " + std::to_string(v));
    side[v] = 2;
  }
  if (!is_connected_set(g, c.first)) return VerifyResult::fail("connected", "first side");
  if (!is_connected_set(g, c.second)) return VerifyResult::fail("connected", "second side");
  if (c.first_root < 0 || c.first_root >= g.size() || side[c.first_root] != 1)
    return VerifyResult::fail("root", "root is not in the first side");
  Subgraph sub = induced_subgraph(g, c.first);
  auto dist = bfs_distances(sub.graph, *sub.to_local(c.first_root));
  int height = *std::max_element(dist.begin(), dist.end());
  if (height > c.height_bound)
    return VerifyResult::fail("height", std::to_string(height) + " > " +
                                            std::to_string(c.height_bound));
  std::set<Edge> seen;
  for (const Edge& e : c.crossing) {
    if (!seen.insert(e).second) return VerifyResult::fail("crossing", "duplicate edge");
    if (e.lo < 0 || e.hi >= g.size() || !g.has_edge(e.lo, e.hi))
      return VerifyResult::fail("crossing", "not an edge");
    if (side[e.lo] + side[e.hi] != 3) return VerifyResult::fail("crossing", "edge not across");
  }
  if (!(static_cast<double>(c.crossing.size()) > c.f))
    return VerifyResult::fail("size", std::to_string(c.crossing.size()) + " <= f");
  return {};
}

/// One run of the tester on one graph; cluster, check and cut answers are
/// memoized across the sampled edges.
class MinorFreenessTester {
 public:
  MinorFreenessTester(QueryOracle& oracle, const TesterConfig& cfg, std::uint64_t seed)
      : oracle_(oracle),
        cfg_((cfg.validate(), cfg)),
        checker_(*cfg.family),
        rng_(detail::splitmix64(~seed)) {
    oracle.remember_answers(cfg.reuse_answers);
    const Vertex n = oracle.size();
    PartitionConfig pc = cfg.partition;
    pc.seed = seed;
    pc.gamma = std::min(1.0, cfg.gamma_coeff * cfg.epsilon);
    pc.alpha = 1.0;  // ell does not depend on alpha
    ell_ = n >= 2 ? sample_ell(n, oracle.delta(), pc) : 1;
    profile_ = cfg.family->profile.best(oracle.delta(), ell_);
    f_ = SeparabilityProfile::f_of(profile_, oracle.delta(), ell_);
    g_ = SeparabilityProfile::g_of(profile_, ell_, n);
    pc.alpha = std::clamp(cfg.alpha_coeff * cfg.epsilon / f_, 1e-300, 1.0);
    partition_cfg_ = pc;
    samples_ = static_cast<std::size_t>(std::ceil(cfg.sample_coeff * f_ / cfg.epsilon));
  }

  double f() const { return f_; }
  int ell() const { return ell_; }
  std::size_t planned_samples() const { return samples_; }
  const PartitionState* state() const { return state_ ? &*state_ : nullptr; }

  /// Runs against a prepared partition instead of sampling one; the
  /// thresholds follow the partition's ell.
  void adopt_partition(PartitionState st) {
    ell_ = st.ell;
    profile_ = cfg_.family->profile.best(oracle_.delta(), ell_);
    f_ = SeparabilityProfile::f_of(profile_, oracle_.delta(), ell_);
    g_ = SeparabilityProfile::g_of(profile_, ell_, oracle_.size());
    samples_ = static_cast<std::size_t>(std::ceil(cfg_.sample_coeff * f_ / cfg_.epsilon));
    state_ = std::move(st);
  }

  /// Uniform edge by probing random slots; nullopt after 10 n Δ empty probes.
  std::optional<Edge> sample_edge() {
    PhaseScope scope(oracle_, QueryPhase::kSampling);
    const Vertex n = oracle_.size();
    const int d = oracle_.delta();
    std::uniform_int_distribution<Vertex> pick_v(0, n - 1);
    std::uniform_int_distribution<int> pick_i(0, d - 1);
    const std::uint64_t cap = 10ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d);
    for (std::uint64_t a = 0; a < cap; ++a) {
      Vertex v = pick_v(rng_);
      int i = pick_i(rng_);
      if (auto w = oracle_.lookup(v, i)) return Edge(v, *w);
    }
    return std::nullopt;
  }

  Verdict run() {
    Verdict out;
    out.ell = ell_;
    out.f = f_;
    out.samples_planned = samples_;
    try {
      if (oracle_.size() < 2) return finish(out);
      ensure_state();
      out.t = state_->t;
      out.centers = state_->centers.size();
      for (std::size_t s = 0; s < samples_; ++s) {
        auto e = sample_edge();
        if (!e) break;  // edgeless graph
        ++out.samples_checked;
        if (auto r = check_edge(*e)) {
          r->samples_planned = out.samples_planned;
          r->samples_checked = out.samples_checked;
          r->ell = ell_;
          r->f = f_;
          r->t = out.t;
          r->centers = out.centers;
          return finish(*r);
        }
      }
    } catch (const LocalAccessFailure& e) {
      out.kind = VerdictKind::kInconclusive;
      out.reason = e.what();
    } catch (const BudgetExhausted& e) {
      out.kind = VerdictKind::kInconclusive;
      out.reason = e.what();
    } catch (const SizeGuardExceeded& e) {
      out.kind = VerdictKind::kInconclusive;
      out.reason = e.what();
    }
    return finish(out);
  }

  /// All checks for one sampled edge; a rejection verdict or nullopt.
  std::optional<Verdict> check_edge(const Edge& e) {
    ensure_state();
    // Every step below remembers what it has checked, so a repeated edge
    // cannot produce anything new.
    const auto key = static_cast<std::uint64_t>(e.lo) * static_cast<std::uint64_t>(oracle_.size()) +
                     static_cast<std::uint64_t>(e.hi);
    if (!checked_edges_.insert(key).second) return std::nullopt;
    PartitionState& st = *state_;
    const Vertex u = e.lo, v = e.hi;
    bool ru, rv;
    {
      PhaseScope scope(oracle_, QueryPhase::kClusterResolution);
      ru = is_remote(oracle_, st, u);
      rv = is_remote(oracle_, st, v);
    }
    // Same cluster: check the cluster (or the remote superset) for a minor.
    if (ru && rv) {
      Vertex lu, lv;
      {
        PhaseScope scope(oracle_, QueryPhase::kClusterResolution);
        lu = remote_leader(oracle_, st, u);
        lv = remote_leader(oracle_, st, v);
      }
      if (lu == lv) return check_remote(lu, u);
      return std::nullopt;
    }
    if (ru || rv) return std::nullopt;  // edges between R and the rest are never checked
    // References into the partition's memo, which never moves its entries.
    const ClusterDescriptor* pu;
    const ClusterDescriptor* pv;
    {
      PhaseScope scope(oracle_, QueryPhase::kClusterResolution);
      pu = &cluster_of(oracle_, st, u);
      pv = &cluster_of(oracle_, st, v);
    }
    const ClusterDescriptor& cu = *pu;
    const ClusterDescriptor& cv = *pv;
    if (cu.same_cluster(cv))
      if (auto r = check_core(cu)) return r;
    for (const ClusterDescriptor* c : {&cu, &cv})
      if (!c->is_singleton())
        if (auto r = check_cell_cut(*c)) return r;
    if (cu.is_singleton() || cv.is_singleton()) return std::nullopt;
    if (!cu.same_cluster(cv))
      if (auto r = check_pair_cut(cv, cu)) return r;
    if (auto r = check_super_cut(cv, cu)) return r;
    if (auto r = check_super_cut(cu, cv)) return r;
    return std::nullopt;
  }

 private:
  void ensure_state() {
    if (state_) return;
    PhaseScope scope(oracle_, QueryPhase::kPartitionInit);
    state_ = init_partition(oracle_, partition_cfg_);
  }

  Verdict finish(Verdict v) {
    v.queries = query_report(oracle_);
    v.unconnected_cuts = unconnected_cuts_;
    return v;
  }

  std::optional<Verdict> minor_verdict(const std::vector<Vertex>& members) {
    Subgraph sub;
    {
      PhaseScope scope(oracle_, QueryPhase::kMinorChecks);
      sub = induced_subgraph(oracle_, members);
    }
    FamilyCheckResult r = checker_.check(sub.graph);
    if (r.free) return std::nullopt;
    Verdict out;
    out.kind = VerdictKind::kReject;
    out.step = "cluster_minor";
    out.member = r.member;
    out.embedding = lift(*r.witness, sub.to_host);
    return out;
  }

  std::optional<Verdict> check_core(const ClusterDescriptor& c) {
    if (!checked_core_.insert(c.root).second) return std::nullopt;
    return minor_verdict(c.members);
  }

  std::optional<Verdict> check_remote(Vertex leader, Vertex any) {
    if (!checked_remote_.insert(leader).second) return std::nullopt;
    std::vector<Vertex> region;
    {
      PhaseScope scope(oracle_, QueryPhase::kClusterResolution);
      region = remote_cluster_superset(oracle_, *state_, any);
    }
    return minor_verdict(region);
  }

  // |E(Vor(w) \ cluster(w), cluster(w))| > f
  std::optional<Verdict> check_cell_cut(const ClusterDescriptor& c) {
    if (c.kind == ClusterKind::kCoreWholeCell) return std::nullopt;  // the cell minus itself is empty
    if (!checked_cell_.insert(c.root).second) return std::nullopt;
    PhaseScope scope(oracle_, QueryPhase::kCutChecks);
    PartitionState& st = *state_;
    auto in_b = [&](Vertex x) {
      if (c.contains(x)) return false;
      const CenterInfo& ci = center_of(oracle_, st, x);
      return !ci.remote && ci.center == c.anchor;
    };
    return cut_verdict("cell_cut", c, in_b);
  }

  // |E(C_v, C_u)| > f
  std::optional<Verdict> check_pair_cut(const ClusterDescriptor& a, const ClusterDescriptor& b) {
    auto key = std::minmax(a.root, b.root);
    if (!checked_pair_.insert(key).second) return std::nullopt;
    PhaseScope scope(oracle_, QueryPhase::kCutChecks);
    return cut_verdict("pair_cut", a, [&](Vertex x) { return b.contains(x); });
  }

  // x joins C != y: |E((A ∪ C) \ y, y)| > f with A the cells of ∂C \ y.
  std::optional<Verdict> check_super_cut(const ClusterDescriptor& x, const ClusterDescriptor& y) {
    if (!checked_super_.insert({x.root, y.root}).second) return std::nullopt;
    PartitionState& st = *state_;
    PhaseScope scope(oracle_, QueryPhase::kCutChecks);
    if (st.is_marked(x.anchor)) return std::nullopt;
    auto joined = join_target(oracle_, st, x);
    if (!joined || joined->same_cluster(y)) return std::nullopt;
    const ClusterDescriptor c = *joined;
    std::set<Vertex> centers;
    for (Vertex m : c.members)
      for (Vertex w : oracle_.neighbors(m)) {
        if (c.contains(w) || y.contains(w)) continue;
        const CenterInfo& ci = center_of(oracle_, st, w);
        if (!ci.remote) centers.insert(ci.center);
      }
    auto in_b = [&](Vertex w) {
      if (y.contains(w)) return false;
      if (c.contains(w)) return true;
      const CenterInfo& ci = center_of(oracle_, st, w);
      return !ci.remote && centers.count(ci.center) > 0;
    };
    return cut_verdict("super_cut", y, in_b);
  }

  // Counts the cut between the core cluster `first` and the region `in_b`;
  // on a large cut, builds a certificate whose second side is a connected
  // part of the region and tries to turn it into an embedding.
  std::optional<Verdict> cut_verdict(const char* step, const ClusterDescriptor& first,
                                     const std::function<bool(Vertex)>& in_b) {
    std::vector<Edge> crossing;
    for (Vertex m : first.members)
      for (Vertex w : oracle_.neighbors(m))
        if (!first.contains(w) && in_b(w)) crossing.emplace_back(m, w);
    if (!(static_cast<double>(crossing.size()) > f_)) return std::nullopt;

    // Connected cover of the crossing endpoints inside the region. The
    // region is connected in theory; if it is not, use the component with
    // the most crossing edges.
    std::set<Vertex> endpoints;
    for (const Edge& e : crossing) endpoints.insert(first.contains(e.lo) ? e.hi : e.lo);
    std::vector<Vertex> best_cover;
    std::vector<Edge> best_edges;
    std::set<Vertex> covered;
    for (Vertex start : endpoints) {
      if (covered.count(start)) continue;
      auto cover = connected_cover(start, endpoints, in_b);
      std::vector<Edge> edges;
      for (const Edge& e : crossing)
        if (std::binary_search(cover.begin(), cover.end(), first.contains(e.lo) ? e.hi : e.lo))
          edges.push_back(e);
      for (Vertex x : endpoints)
        if (std::binary_search(cover.begin(), cover.end(), x)) covered.insert(x);
      if (edges.size() > best_edges.size()) {
        best_edges = std::move(edges);
        best_cover = std::move(cover);
      }
    }
    if (!(static_cast<double>(best_edges.size()) > f_)) {
      ++unconnected_cuts_;
      return std::nullopt;
    }
    CutCertificate cert;
    cert.first = first.members;
    cert.second = std::move(best_cover);
    cert.first_root = first.root;
    cert.height_bound = g_;
    cert.f = f_;
    cert.crossing = std::move(best_edges);
    std::sort(cert.crossing.begin(), cert.crossing.end());

    Verdict out;
    out.kind = VerdictKind::kReject;
    out.step = step;
    if (auto emb = construct(cert)) {
      out.member = profile_.member;
      out.embedding = std::move(*emb);
    }
    out.certificate = std::move(cert);
    return out;
  }

  // BFS inside the region from `start`, stopping once every endpoint
  // reachable has been found; returns the union of tree paths to them.
  std::vector<Vertex> connected_cover(Vertex start, const std::set<Vertex>& endpoints,
                                      const std::function<bool(Vertex)>& in_b) {
    std::unordered_map<Vertex, Vertex> parent{{start, start}};
    std::vector<Vertex> queue{start};
    std::size_t found = 1;
    for (std::size_t head = 0; head < queue.size() && found < endpoints.size(); ++head)
      for (Vertex w : oracle_.neighbors(queue[head])) {
        if (parent.count(w) || !in_b(w)) continue;
        parent.emplace(w, queue[head]);
        queue.push_back(w);
        if (endpoints.count(w)) ++found;
      }
    std::set<Vertex> cover;
    for (Vertex x : endpoints) {
      if (!parent.count(x)) continue;
      for (Vertex y = x; cover.insert(y).second && y != start; y = parent.at(y)) {
      }
    }
    return {cover.begin(), cover.end()};
  }

  // Runs the cut-to-minor assembly matching the profile, then maps the
  // template minor down to the family member it contains.
  std::optional<MinorEmbedding> construct(const CutCertificate& cert) {
    std::vector<Vertex> all = cert.first;
    all.insert(all.end(), cert.second.begin(), cert.second.end());
    Subgraph sub = induced_subgraph(oracle_, all);
    auto local = [&](const std::vector<Vertex>& s) {
      std::vector<Vertex> out;
      for (Vertex v : s) out.push_back(*sub.to_local(v));
      return out;
    };
    CutInstance ci;
    ci.host = &sub.graph;
    ci.v1 = local(cert.first);
    ci.v2 = local(cert.second);
    ci.k = profile_.k;
    ci.h = ell_;
    ci.root = *sub.to_local(cert.first_root);
    MinorTemplate tmpl;
    std::optional<MinorEmbedding> outer;
    try {
      switch (profile_.kind) {
        case ProfileKind::kK2k:
          tmpl = make_k2k(profile_.k);
          outer = k2k_minor_from_cut(ci);
          break;
        case ProfileKind::kCircus:
          tmpl = make_circus(profile_.k);
          outer = circus_minor_from_cut(ci);
          break;
        case ProfileKind::kGrid:
          tmpl = make_grid(profile_.k);
          outer = grid_minor_from_cut(ci);
          break;
      }
    } catch (const std::exception&) {
      return std::nullopt;  // the assembly is opportunistic; the certificate stands alone
    }
    if (!outer) return std::nullopt;
    const Graph& member = cfg_.family->members[profile_.member].graph;
    auto inner = find_minor_bruteforce(tmpl.graph, member);
    if (!inner) return std::nullopt;
    auto composed = compose_embeddings(sub.graph, tmpl.graph, member, *outer, *inner);
    if (!composed || !verify_embedding(sub.graph, member, *composed)) return std::nullopt;
    return lift(*composed, sub.to_host);
  }

  static MinorEmbedding lift(const MinorEmbedding& e, const std::vector<Vertex>& to_host) {
    MinorEmbedding out;
    for (const auto& set : e.branch_sets) {
      std::vector<Vertex> s;
      for (Vertex v : set) s.push_back(to_host[v]);
      std::sort(s.begin(), s.end());
      out.branch_sets.push_back(std::move(s));
    }
    for (const auto& w : e.edge_witnesses)
      out.edge_witnesses.push_back({w.a, w.b, to_host[w.u], to_host[w.v]});
    return out;
  }

  QueryOracle& oracle_;
  TesterConfig cfg_;
  FamilyChecker checker_;
  std::mt19937_64 rng_;
  PartitionConfig partition_cfg_;
  std::optional<PartitionState> state_;
  ProfileCandidate profile_{};
  int ell_ = 1;
  double f_ = 0, g_ = 0;
  std::size_t samples_ = 0;
  std::size_t unconnected_cuts_ = 0;
  std::unordered_set<Vertex> checked_core_, checked_remote_, checked_cell_;
  std::unordered_set<std::uint64_t> checked_edges_;
  std::set<std::pair<Vertex, Vertex>> checked_pair_, checked_super_;
};

/// Runs the tester once; the verdict is a function of (graph, config, seed).
inline Verdict test_minor_freeness(QueryOracle& oracle, const TesterConfig& cfg,
                                   std::uint64_t seed) {
  return MinorFreenessTester(oracle, cfg, seed).run();
}

/// Every rejection must justify itself against the graph alone.
inline VerifyResult recheck_verdict(const Graph& g, const ForbiddenFamily& family,
                                    const Verdict& v) {
  if (!v.rejected()) return {};
  if (v.embedding) {
    if (v.member < 0 || v.member >= static_cast<int>(family.members.size()))
      return VerifyResult::fail("member", "embedding names no family member");
    if (auto r = verify_embedding(g, family.members[v.member].graph, *v.embedding); !r) return r;
  }
  if (v.certificate)
    if (auto r = recheck_certificate(g, *v.certificate); !r) return r;
  if (!v.embedding && !v.certificate) return VerifyResult::fail("payload", "bare rejection");
  return {};
}

inline nlohmann::json report_json(const QueryReport& q) {
  nlohmann::json j;
  j["total"] = q.total;
  for (int p = 0; p < static_cast<int>(QueryPhase::kCount); ++p)
    j[phase_name(static_cast<QueryPhase>(p))] = q.per_phase[p];
  return j;
}

inline nlohmann::json verdict_json(const Verdict& v, const ForbiddenFamily& family) {
  nlohmann::json j;
  j["verdict"] = verdict_name(v.kind);
  j["ell"] = v.ell;
  j["f"] = v.f;
  j["t"] = v.t;
  j["centers"] = v.centers;
  j["samples_planned"] = v.samples_planned;
  j["samples_checked"] = v.samples_checked;
  j["queries"] = report_json(v.queries);
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.rejected()) return j;
  j["step"] = v.step;
  j["payload"] = v.embedding ? "embedding" : "certificate";
  if (v.embedding) {
    nlohmann::json e;
    e["member"] = family.members[v.member].name;
    e["branch_sets"] = v.embedding->branch_sets;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : v.embedding->edge_witnesses) w.push_back({x.a, x.b, x.u, x.v});
    e["edge_witnesses"] = w;
    j["embedding"] = e;
  }
  if (v.certificate) {
    const auto& c = *v.certificate;
    nlohmann::json e;
    e["first"] = c.first;
    e["second"] = c.second;
    e["first_root"] = c.first_root;
    e["height_bound"] = c.height_bound;
    e["f"] = c.f;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : c.crossing) w.push_back({x.lo, x.hi});
    e["crossing"] = w;
    j["certificate"] = e;
  }
  return j;
}

/// Short stable digest of a rejection payload, for campaign logs.
inline std::uint64_t witness_hash(const Verdict& v) {
  if (!v.rejected()) return 0;
  std::uint64_t h = detail::splitmix64(static_cast<std::uint64_t>(v.member + 7));
  auto mix = [&](std::uint64_t x) { h = detail::splitmix64(h ^ x); };
  if (v.embedding)
    for (const auto& s : v.embedding->branch_sets) {
      mix(0xb5);
      for (Vertex x : s) mix(static_cast<std::uint64_t>(x));
    }
  if (v.certificate)
    for (const Edge& e : v.certificate->crossing)
      mix(static_cast<std::uint64_t>(e.lo) << 32 ^ static_cast<std::uint64_t>(e.hi));
  return h;
}

}  // namespace minorfree
