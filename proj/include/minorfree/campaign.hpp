#pragma once

// Experiment plumbing: key-value experiment specs, parallel trial execution
// with CSV output, summary statistics with a log-log scaling fit, and
// whole-partition statistics for measuring the partition lemmas.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "minorfree/family.hpp"
#include "minorfree/generators.hpp"
#include "minorfree/graph.hpp"
#include "minorfree/oracle.hpp"
#include "minorfree/partition.hpp"
#include "minorfree/tester.hpp"

namespace minorfree {

/// One experiment. In spec files each field is a `key = value` line; `#`
/// starts a comment. `n` accepts a comma-separated list for scaling runs.
struct ExperimentSpec {
  std::string generator = "outerplanar";  // empty, tree, outerplanar, cactus, planted_far, planted_far_path
  std::vector<Vertex> n{1000};
  int delta = 4;
  double epsilon = 0.1;
  std::string family = "outerplanar";
  std::size_t trials = 10;
  std::uint64_t seed = 1;  // trials use seeds seed, seed+1, ...
  unsigned threads = 0;    // 0: hardware concurrency
  bool timing = false;     // off keeps CSV files byte-identical across runs
  double cycle_prob = 0.3;
  TesterConfig tester;     // family pointer is bound at run time

  void validate() const {
    static const std::vector<std::string> known{"empty",   "tree",        "outerplanar",
                                                "cactus",  "planted_far", "planted_far_path"};
    if (std::find(known.begin(), known.end(), generator) == known.end())
      throw std::invalid_argument("unknown generator '" + generator + "'");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (n.empty()) throw std::invalid_argument("n list is empty");
    for (Vertex x : n)
      if (x < 1 || (generator == "outerplanar" && x < 3))
        throw std::invalid_argument("n = " + std::to_string(x) + " is invalid for " + generator);
    if (delta < 1 || (delta < 2 && (generator == "outerplanar" || generator == "cactus")))
      throw std::invalid_argument("delta = " + std::to_string(delta) + " is invalid for " +
                                  generator);
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(cycle_prob >= 0 && cycle_prob <= 1))
      throw std::invalid_argument("cycle_prob must lie in [0,1]");
    parse_family(family);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw std::invalid_argument("'" + key + "' expects a number, got '" + v + "'");
  return x;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  if (x < 0 || x != std::floor(x))
    throw std::invalid_argument("'" + key + "' expects a nonnegative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("'" + key + "' expects on/off, got '" + v + "'");
}

}  // namespace detail

/// Applies one key-value setting; throws on unknown keys or bad values.
inline void set_spec_value(ExperimentSpec& s, const std::string& key, const std::string& value) {
  using namespace detail;
  auto& t = s.tester;
  auto& p = t.partition;
  if (key == "generator") s.generator = value;
  else if (key == "n") {
    s.n.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) s.n.push_back(static_cast<Vertex>(to_uint(key, trim(item))));
  } else if (key == "delta") s.delta = static_cast<int>(to_uint(key, value));
  else if (key == "epsilon") s.epsilon = to_double(key, value);
  else if (key == "family") s.family = value;
  else if (key == "trials") s.trials = to_uint(key, value);
  else if (key == "seed") s.seed = to_uint(key, value);
  else if (key == "threads") s.threads = static_cast<unsigned>(to_uint(key, value));
  else if (key == "timing") s.timing = to_bool(key, value);
  else if (key == "cycle_prob") s.cycle_prob = to_double(key, value);
  else if (key == "sample_coeff") t.sample_coeff = to_double(key, value);
  else if (key == "gamma_coeff") t.gamma_coeff = to_double(key, value);
  else if (key == "alpha_coeff") t.alpha_coeff = to_double(key, value);
  else if (key == "query_budget") t.query_budget = to_uint(key, value);
  else if (key == "reuse_answers") t.reuse_answers = to_bool(key, value);
  else if (key == "const_b") p.const_b = to_double(key, value);
  else if (key == "const_c") p.const_c = to_double(key, value);
  else if (key == "center_count_coeff") p.center_count_coeff = to_double(key, value);
  else if (key == "y_coeff") p.y_coeff = to_double(key, value);
  else if (key == "mark_probability") p.mark_probability = to_double(key, value);
  else throw std::invalid_argument("unknown spec key '" + key + "'");
}

inline ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": expected key = value");
    try {
      set_spec_value(s, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  s.validate();
  return s;
}

inline ExperimentSpec parse_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

/// The generated input of one trial.
struct Instance {
  Graph graph;
  std::string note;  // farness certificate for planted inputs
};

/// Generator seeds are decorrelated from tester seeds.
inline std::uint64_t instance_seed(std::uint64_t seed, Vertex n) {
  return detail::splitmix64(seed * 0x100000001b3ULL ^ static_cast<std::uint64_t>(n) ^ 0x6e6ULL);
}

inline Instance generate_instance(const ExperimentSpec& s, const ForbiddenFamily& family, Vertex n,
                                  std::uint64_t seed) {
  Rng rng(instance_seed(seed, n));
  const std::string& g = s.generator;
  if (g == "empty") return {gen_empty(n, s.delta), ""};
  if (g == "tree") return {gen_cactus(n, s.delta, rng, 0.0), ""};
  if (g == "outerplanar") return {gen_outerplanar(n, s.delta, rng), ""};
  if (g == "cactus") return {gen_cactus(n, s.delta, rng, s.cycle_prob), ""};
  auto planted = gen_planted_far(n, s.delta, family, s.epsilon, rng, g == "planted_far_path");
  return {std::move(planted.graph), planted.certificate()};
}

struct TrialRecord {
  std::uint64_t seed = 0;
  Vertex n = 0;
  int delta = 0;
  double epsilon = 0;
  VerdictKind verdict = VerdictKind::kAccept;
  QueryReport queries;
  double wall_ms = 0;
  std::uint64_t witness_hash = 0;
  std::string generator;
  std::string recheck;  // ok or failed for rejections, - otherwise
  std::string detail;   // rejection step, or the reason for an inconclusive run
};

inline const char* kCsvHeader =
    "seed,n,delta,epsilon,verdict,queries_total,queries_partition,queries_checks,wall_ms,"
    "witness_hash,generator,recheck,detail";

inline std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& out, const TrialRecord& r) {
  out << r.seed << ',' << r.n << ',' << r.delta << ',' << r.epsilon << ','
      << verdict_name(r.verdict) << ',' << r.queries.total << ',' << r.queries.partition() << ','
      << r.queries.checks() << ',' << std::fixed << std::setprecision(3) << r.wall_ms
      << std::defaultfloat << ',' << std::hex << std::setw(16) << std::setfill('0')
      << r.witness_hash << std::dec << std::setfill(' ') << ',' << csv_field(r.generator) << ','
      << r.recheck << ',' << csv_field(r.detail) << '\n';
}

/// Runs one trial. Generator or tester failures become inconclusive records
/// carrying the error text.
inline TrialRecord run_trial(const ExperimentSpec& s, const ForbiddenFamily& family, Vertex n,
                             std::uint64_t seed) {
  TrialRecord r;
  r.seed = seed;
  r.n = n;
  r.delta = s.delta;
  r.epsilon = s.epsilon;
  r.generator = s.generator;
  r.recheck = "-";
  auto start = std::chrono::steady_clock::now();
  try {
    Instance inst = generate_instance(s, family, n, seed);
    QueryOracle oracle(inst.graph, s.tester.query_budget);
    TesterConfig cfg = s.tester;
    cfg.epsilon = s.epsilon;
    cfg.family = &family;
    Verdict v = test_minor_freeness(oracle, cfg, seed);
    r.verdict = v.kind;
    r.queries = v.queries;
    r.witness_hash = witness_hash(v);
    if (v.rejected()) {
      auto ok = recheck_verdict(inst.graph, family, v);
      r.recheck = ok ? "ok" : "failed";
      r.detail = v.step + (ok ? "" : " " + ok.condition + ": " + ok.detail);
    } else if (v.kind == VerdictKind::kInconclusive) {
      r.detail = v.reason;
    }
  } catch (const std::exception& e) {
    r.verdict = VerdictKind::kInconclusive;
    r.detail = e.what();
  }
  if (s.timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

/// Least-squares slope of log(y) against log(x) with a 95% confidence interval.
struct PowerFit {
  double exponent = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::size_t points = 0;
};

inline PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  PowerFit fit;
  fit.points = x.size();
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("power-law fit needs at least two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("power-law fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("power-law fit needs distinct x values");
  fit.exponent = sxy / sxx;
  if (lx.size() < 3) {
    fit.ci_low = fit.ci_high = fit.exponent;
    return fit;
  }
  double sse = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
    sse += r * r;
  }
  const double se = std::sqrt(sse / (k - 2) / sxx);
  boost::math::students_t dist(k - 2);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.ci_low = fit.exponent - q * se;
  fit.ci_high = fit.exponent + q * se;
  return fit;
}

struct CampaignSummary {
  std::size_t trials = 0, accepts = 0, rejects = 0, inconclusive = 0, recheck_failures = 0;
  double mean_queries = 0, p95_queries = 0;
  std::map<Vertex, double> mean_queries_by_n;
  std::optional<PowerFit> scaling;  // when more than one n was run

  double rate(std::size_t k) const { return trials ? static_cast<double>(k) / trials : 0; }
};

inline CampaignSummary summarize(const std::vector<TrialRecord>& records) {
  CampaignSummary s;
  s.trials = records.size();
  std::vector<double> q;
  std::map<Vertex, std::pair<double, std::size_t>> by_n;
  for (const auto& r : records) {
    switch (r.verdict) {
      case VerdictKind::kAccept: ++s.accepts; break;
      case VerdictKind::kReject: ++s.rejects; break;
      case VerdictKind::kInconclusive: ++s.inconclusive; break;
    }
    if (r.recheck == "failed") ++s.recheck_failures;
    q.push_back(static_cast<double>(r.queries.total));
    auto& [sum, count] = by_n[r.n];
    sum += static_cast<double>(r.queries.total);
    ++count;
  }
  if (!q.empty()) {
    s.mean_queries = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
    std::sort(q.begin(), q.end());
    // Nearest-rank percentile.
    auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(q.size())));
    s.p95_queries = q[std::max<std::size_t>(rank, 1) - 1];
  }
  std::vector<double> xs, ys;
  for (const auto& [n, acc] : by_n) {
    s.mean_queries_by_n[n] = acc.first / static_cast<double>(acc.second);
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::max(1.0, s.mean_queries_by_n[n]));
  }
  if (xs.size() >= 2) s.scaling = fit_power_law(xs, ys);
  return s;
}

inline void print_summary(std::ostream& out, const CampaignSummary& s) {
  out << std::fixed << std::setprecision(4);
  out << "trials " << s.trials << "\n"
      << "accept_rate " << s.rate(s.accepts) << "\n"
      << "reject_rate " << s.rate(s.rejects) << "\n"
      << "inconclusive_rate " << s.rate(s.inconclusive) << "\n"
      << "recheck_failures " << s.recheck_failures << "\n"
      << std::setprecision(1) << "mean_queries " << s.mean_queries << "\n"
      << "p95_queries " << s.p95_queries << "\n";
  for (const auto& [n, m] : s.mean_queries_by_n) out << "mean_queries[n=" << n << "] " << m << "\n";
  if (s.scaling)
    out << std::setprecision(4) << "exponent " << s.scaling->exponent << " (95% CI "
        << s.scaling->ci_low << " .. " << s.scaling->ci_high << ", " << s.scaling->points
        << " sizes)\n";
  out << std::defaultfloat;
}

/// All trials of a spec, ordered by (n, seed) whatever order workers finish in.
inline std::vector<TrialRecord> run_trials(const ExperimentSpec& spec) {
  spec.validate();
  const ForbiddenFamily family = parse_family(spec.family);
  struct Job {
    Vertex n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Vertex n : spec.n)
    for (std::size_t i = 0; i < spec.trials; ++i) jobs.push_back({n, spec.seed + i});
  std::vector<TrialRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();)
      records[j] = run_trial(spec, family, jobs[j].n, jobs[j].seed);
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();  // joins
  return records;
}

/// Runs the campaign, writes the CSV, and returns the summary.
inline CampaignSummary run_campaign(const ExperimentSpec& spec, std::ostream& csv) {
  auto records = run_trials(spec);
  csv << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(csv, r);
  if (!csv) throw std::runtime_error("writing campaign CSV failed");
  return summarize(records);
}

inline CampaignSummary run_campaign(const ExperimentSpec& spec, const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
  return run_campaign(spec, out);
}

// ---------------------------------------------------------------------------
// Partition statistics.

struct PartitionTrialStats {
  std::uint64_t seed = 0;
  std::size_t centers = 0;
  std::size_t remote = 0;        // |R|
  std::size_t remote_cut = 0;    // |K|
  std::size_t boundary_cut = 0;  // |E(R, R-bar)|
  std::size_t clusters = 0;      // s
  double cluster_bound = 0;      // |S| + n ell (Delta + 1) / t
  double mean_near_max = 0;      // mean |C(v)| over remote v
  int ell = 0;
  double t = 0;
  std::map<std::size_t, std::size_t> size_histogram;  // cluster size -> count
};

struct PartitionStatsSummary {
  std::vector<PartitionTrialStats> trials;
  double mean_boundary_cut = 0;
  double boundary_cut_limit = 0;   // 2 gamma n
  double remote_cut_fraction = 0;  // trials with |K| <= 100 gamma Delta |R|
  double cluster_bound_fraction = 0;
  double mean_near_max = 0;        // over trials with remote vertices
};

inline PartitionTrialStats partition_trial(const Graph& g, PartitionConfig cfg,
                                           std::uint64_t seed) {
  cfg.seed = seed;
  QueryOracle oracle(g);
  PartitionState st = init_partition(oracle, cfg);
  PartitionSnapshot snap = snapshot_partition(oracle, st);
  PartitionTrialStats r;
  r.seed = seed;
  r.centers = st.centers.size();
  r.remote = snap.remote_vertices;
  r.remote_cut = snap.remote_cut;
  r.boundary_cut = snap.boundary_cut;
  r.clusters = snap.clusters.size();
  r.cluster_bound = static_cast<double>(st.centers.size()) +
                    static_cast<double>(st.n) * st.ell * (st.delta + 1) / st.t;
  r.mean_near_max = snap.mean_near_max;
  r.ell = st.ell;
  r.t = st.t;
  for (const auto& c : snap.clusters) ++r.size_histogram[c.members.size()];
  return r;
}

/// Builds the full partition `trials` times (seeds seed, seed+1, ...) and
/// measures it against the three partition bounds.
inline PartitionStatsSummary partition_stats(const Graph& g, const PartitionConfig& cfg,
                                             std::size_t trials, std::uint64_t seed = 0) {
  PartitionStatsSummary s;
  std::size_t k_ok = 0, s_ok = 0, with_remote = 0;
  double near = 0, cut = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    auto r = partition_trial(g, cfg, seed + i);
    cut += static_cast<double>(r.boundary_cut);
    if (static_cast<double>(r.remote_cut) <=
        100.0 * cfg.gamma * g.delta() * static_cast<double>(r.remote))
      ++k_ok;
    if (static_cast<double>(r.clusters) <= r.cluster_bound) ++s_ok;
    if (r.remote > 0) {
      ++with_remote;
      near += r.mean_near_max;
    }
    s.trials.push_back(std::move(r));
  }
  const double k = std::max<double>(1, static_cast<double>(trials));
  s.mean_boundary_cut = cut / k;
  s.boundary_cut_limit = 2.0 * cfg.gamma * g.size();
  s.remote_cut_fraction = static_cast<double>(k_ok) / k;
  s.cluster_bound_fraction = static_cast<double>(s_ok) / k;
  s.mean_near_max = with_remote ? near / static_cast<double>(with_remote) : 0;
  return s;
}

inline void print_partition_stats(std::ostream& out, const PartitionStatsSummary& s) {
  out << "seed,centers,ell,t,remote,remote_cut,boundary_cut,clusters,cluster_bound,mean_near_max\n";
  for (const auto& r : s.trials)
    out << r.seed << ',' << r.centers << ',' << r.ell << ',' << r.t << ',' << r.remote << ','
        << r.remote_cut << ',' << r.boundary_cut << ',' << r.clusters << ',' << r.cluster_bound
        << ',' << r.mean_near_max << '\n';
  std::map<std::size_t, std::size_t> hist;
  for (const auto& r : s.trials)
    for (const auto& [size, count] : r.size_histogram) hist[size] += count;
  out << "# cluster size histogram (size:count)\n#";
  for (const auto& [size, count] : hist) out << ' ' << size << ':' << count;
  out << "\n# mean |E(R,R-bar)| " << s.mean_boundary_cut << " (limit 2 gamma n = "
      << s.boundary_cut_limit << ")\n"
      << "# trials with |K| <= 100 gamma Delta |R|: " << s.remote_cut_fraction << "\n"
      << "# trials with s <= |S| + n ell (Delta+1) / t: " << s.cluster_bound_fraction << "\n"
      << "# mean |C(v)| " << s.mean_near_max << "\n";
}

}  // namespace minorfree
