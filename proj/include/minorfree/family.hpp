#pragma once

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minorfree/graph.hpp"
#include "minorfree/minor.hpp"
#include "minorfree/recognize.hpp"

namespace minorfree {

enum class ProfileKind { kK2k, kCircus, kGrid };

inline const char* profile_kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::kK2k: return "K2,k";
    case ProfileKind::kCircus: return "circus";
    case ProfileKind::kGrid: return "grid";
  }
  return "?";
}

/// A family member H that is a minor of the k-th template of some kind, so
/// H-minor-free graphs inherit that template's separability bound.
struct ProfileCandidate {
  ProfileKind kind;
  int k;
  int member;
};

/// Separability bound (f, g) as a function of (Δ, ℓ, n), taking the smallest f
/// over the candidates. Huge values saturate to +infinity.
struct SeparabilityProfile {
  std::vector<ProfileCandidate> candidates;

  bool usable() const { return !candidates.empty(); }

  static double f_of(const ProfileCandidate& c, int delta, int ell) {
    const double d = delta, h = ell, k = c.k;
    switch (c.kind) {
      case ProfileKind::kK2k: return 2.0 * d * k * h;
      case ProfileKind::kCircus: return 2.0 * h * std::pow(d, 2.0 + k * k);
      case ProfileKind::kGrid: return std::pow(d, 1.0 + std::pow(d, k * k + 1.0));
    }
    return std::numeric_limits<double>::infinity();
  }
  static double g_of(const ProfileCandidate& c, int ell, Vertex n) {
    return c.kind == ProfileKind::kGrid ? static_cast<double>(n) : static_cast<double>(ell);
  }

  /// Candidate achieving the minimum f; throws if the family has none.
  const ProfileCandidate& best(int delta, int ell) const {
    if (candidates.empty())
      throw std::invalid_argument("family has no separability profile (no member is a minor "
                                  "of a K2,k, circus or grid within the search limit)");
    const ProfileCandidate* out = &candidates.front();
    for (const auto& c : candidates)
      if (f_of(c, delta, ell) < f_of(*out, delta, ell)) out = &c;
    return *out;
  }
  double f(int delta, int ell) const { return f_of(best(delta, ell), delta, ell); }
  double g(int delta, int ell, Vertex n) const { return g_of(best(delta, ell), ell, n); }
};

/// Finite nonempty list of forbidden minors.
struct ForbiddenFamily {
  std::string name;
  std::vector<MinorTemplate> members;
  SeparabilityProfile profile;
};

/// Largest k tried when matching members against the three template kinds.
inline constexpr int kProfileMaxK = 6;

inline SeparabilityProfile compute_profile(const std::vector<MinorTemplate>& members) {
  SeparabilityProfile p;
  for (int m = 0; m < static_cast<int>(members.size()); ++m) {
    const Graph& h = members[m].graph;
    auto smallest = [&](ProfileKind kind, auto make) {
      for (int k = 1; k <= kProfileMaxK; ++k) {
        Graph host = make(k).graph;
        BruteForceOptions opt;
        opt.max_host_vertices = 64;
        if (find_minor_bruteforce(host, h, opt)) {
          p.candidates.push_back({kind, k, m});
          return;
        }
      }
    };
    smallest(ProfileKind::kK2k, make_k2k);
    smallest(ProfileKind::kCircus, make_circus);
    smallest(ProfileKind::kGrid, make_grid);
  }
  return p;
}

inline ForbiddenFamily make_family(std::string name, std::vector<MinorTemplate> members) {
  if (members.empty()) throw std::invalid_argument("forbidden family must be nonempty");
  ForbiddenFamily f{std::move(name), std::move(members), {}};
  f.profile = compute_profile(f.members);
  return f;
}

/// Parses "diamond", "k4", "k23", "c3", "kN", "cN", "k2k:N", "circus:N",
/// "grid:N", comma-separated, plus the aliases "outerplanar" ({K2,3, K4}),
/// "cactus" ({diamond}) and "forest" ({C3}).
inline ForbiddenFamily parse_family(const std::string& spec) {
  std::vector<MinorTemplate> members;
  std::stringstream ss(spec);
  std::string item;
  auto number_after = [](const std::string& s, std::size_t pos) {
    std::size_t used = 0;
    int v = std::stoi(s.substr(pos), &used);
    if (pos + used != s.size()) throw std::invalid_argument("bad family member '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    for (auto& ch : item) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (item.empty()) continue;
    if (item == "outerplanar") {
      members.push_back(make_k2k(3));
      members.push_back(make_complete(4));
    } else if (item == "cactus" || item == "diamond") {
      members.push_back(make_diamond());
    } else if (item == "forest") {
      members.push_back(make_cycle(3));
    } else if (item == "k23") {
      members.push_back(make_k2k(3));
    } else if (item.rfind("k2k:", 0) == 0) {
      members.push_back(make_k2k(number_after(item, 4)));
    } else if (item.rfind("circus:", 0) == 0) {
      members.push_back(make_circus(number_after(item, 7)));
    } else if (item.rfind("grid:", 0) == 0) {
      members.push_back(make_grid(number_after(item, 5)));
    } else if (item.size() > 1 && item[0] == 'k') {
      members.push_back(make_complete(number_after(item, 1)));
    } else if (item.size() > 1 && item[0] == 'c') {
      members.push_back(make_cycle(number_after(item, 1)));
    } else {
      throw std::invalid_argument("unknown family member '" + item + "'");
    }
  }
  return make_family(spec, std::move(members));
}

struct FamilyCheckResult {
  bool free = true;
  int member = -1;  // index of the embedded member when !free
  std::optional<MinorEmbedding> witness;
};

/// Decides family-minor-freeness. Members recognized by canonical form
/// (triangle, diamond, K4, K2,3) use exact recognizers; anything else goes
/// through the size-guarded brute force.
class FamilyChecker {
 public:
  explicit FamilyChecker(const ForbiddenFamily& family, BruteForceOptions opt = {})
      : family_(&family), opt_(opt) {
    const auto c3 = canonical_form(make_cycle(3).graph);
    const auto dia = canonical_form(make_diamond().graph);
    const auto k4 = canonical_form(make_complete(4).graph);
    const auto k23 = canonical_form(make_k2k(3).graph);
    all_biconnected_ = true;
    for (const auto& m : family.members) {
      auto cf = canonical_form(m.graph);
      Kind kind = Kind::kOther;
      if (cf == c3) kind = Kind::kTriangle;
      else if (cf == dia) kind = Kind::kDiamond;
      else if (cf == k4) kind = Kind::kK4;
      else if (cf == k23) kind = Kind::kK23;
      kinds_.push_back(kind);
      has_k4_ |= kind == Kind::kK4;
      has_k23_ |= kind == Kind::kK23;
      all_biconnected_ &= detail::is_biconnected_template(m.graph);
    }
  }

  /// True iff some member is a minor of g.
  bool contains_any(const Graph& g) const {
    if (has_k4_ && has_k23_ && !is_outerplanar(g)) return true;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
      switch (kinds_[i]) {
        case Kind::kTriangle:
          if (!is_forest(g)) return true;
          break;
        case Kind::kDiamond:
          if (!is_cactus(g)) return true;
          break;
        case Kind::kK4:
          if (!is_series_parallel(g)) return true;
          break;
        case Kind::kK23:
          if (has_k4_) break;  // covered by the outerplanarity test above
          [[fallthrough]];
        case Kind::kOther:
          if (find_minor_bruteforce(g, family_->members[i].graph, opt_)) return true;
          break;
      }
    }
    return false;
  }

  FamilyCheckResult check(const Graph& g) const {
    if (!contains_any(g)) return {};
    // Shrink to one block (2-connected members) or component holding a member.
    std::vector<std::vector<Vertex>> pieces =
        all_biconnected_ ? detail::biconnected_blocks(g) : connected_components(g);
    Subgraph piece = induced_subgraph(g, {});
    bool found = false;
    for (const auto& p : pieces) {
      Subgraph s = induced_subgraph(g, p);
      if (contains_any(s.graph)) {
        piece = std::move(s);
        found = true;
        break;
      }
    }
    if (!found) {
      std::vector<Vertex> all(static_cast<std::size_t>(g.size()));
      std::iota(all.begin(), all.end(), 0);
      piece = induced_subgraph(g, all);
    }
    auto [small, sets] =
        minimize_minor(piece.graph, [this](const Graph& x) { return contains_any(x); });
    for (auto& s : sets)
      for (auto& v : s) v = piece.to_host[v];
    for (int m = 0; m < static_cast<int>(family_->members.size()); ++m) {
      const Graph& h = family_->members[m].graph;
      std::optional<MinorEmbedding> inner;
      if (auto iso = find_isomorphism(h, small)) {
        std::vector<std::vector<Vertex>> branch(static_cast<std::size_t>(h.size()));
        for (Vertex a = 0; a < h.size(); ++a) branch[a] = {(*iso)[a]};
        inner = embedding_from_branch_sets(small, h, branch);
      } else {
        BruteForceOptions opt = opt_;
        opt.max_host_vertices = std::max<Vertex>(opt.max_host_vertices, 64);
        inner = find_minor_bruteforce(small, h, opt);
      }
      if (!inner) continue;
      MinorEmbedding outer;
      outer.branch_sets = sets;
      auto emb = compose_embeddings(g, small, h, outer, *inner);
      if (!emb) throw std::logic_error("witness extraction produced an invalid embedding");
      return {false, m, std::move(emb)};
    }
    throw std::logic_error("minimal minor matches no family member");
  }

 private:
  enum class Kind { kTriangle, kDiamond, kK4, kK23, kOther };
  const ForbiddenFamily* family_;
  BruteForceOptions opt_;
  std::vector<Kind> kinds_;
  bool has_k4_ = false, has_k23_ = false, all_biconnected_ = true;
};

inline FamilyCheckResult is_family_minor_free(const Graph& host, const ForbiddenFamily& family,
                                              BruteForceOptions opt = {}) {
  return FamilyChecker(family, opt).check(host);
}

// ---------------------------------------------------------------------------
// Witness text format:
//   minor <name> <template vertices> <template edges>
//   branch <a> <v1> <v2> ...
//   edge <a> <b> <u> <v>

inline void write_witness(std::ostream& out, const MinorTemplate& tmpl, const MinorEmbedding& emb) {
  out << "minor " << tmpl.name << ' ' << tmpl.graph.size() << ' ' << tmpl.graph.edge_count()
      << '\n';
  for (std::size_t a = 0; a < emb.branch_sets.size(); ++a) {
    out << "branch " << a;
    for (Vertex v : emb.branch_sets[a]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& w : emb.edge_witnesses)
    out << "edge " << w.a << ' ' << w.b << ' ' << w.u << ' ' << w.v << '\n';
}

inline std::string witness_to_string(const MinorTemplate& tmpl, const MinorEmbedding& emb) {
  std::ostringstream os;
  write_witness(os, tmpl, emb);
  return os.str();
}

/// Parses the witness format; returns the template name and the embedding.
inline std::pair<std::string, MinorEmbedding> read_witness(std::istream& in) {
  std::string line, name;
  MinorEmbedding emb;
  bool header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "minor") {
      std::size_t h = 0, m = 0;
      if (!(ls >> name >> h >> m)) throw std::invalid_argument("bad witness header");
      emb.branch_sets.assign(h, {});
      header = true;
    } else if (tag == "branch" && header) {
      std::size_t a = 0;
      if (!(ls >> a) || a >= emb.branch_sets.size())
        throw std::invalid_argument("bad branch line: " + line);
      for (Vertex v; ls >> v;) emb.branch_sets[a].push_back(v);
    } else if (tag == "edge" && header) {
      EdgeWitness w;
      if (!(ls >> w.a >> w.b >> w.u >> w.v)) throw std::invalid_argument("bad edge line: " + line);
      emb.edge_witnesses.push_back(w);
    } else {
      throw std::invalid_argument("unexpected witness line: " + line);
    }
  }
  if (!header) throw std::invalid_argument("witness has no header");
  return {name, emb};
}

/// DOT export of the host with each branch set in its own color.
inline std::string witness_to_dot(const Graph& host, const MinorEmbedding& emb) {
  std::vector<int> color(static_cast<std::size_t>(host.size()), -1);
  for (std::size_t a = 0; a < emb.branch_sets.size(); ++a)
    for (Vertex v : emb.branch_sets[a]) color[v] = static_cast<int>(a);
  return to_dot(host, color);
}

}  // namespace minorfree
