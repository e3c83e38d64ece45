// Command-line front end: single tester runs, campaigns from spec files,
// partition statistics, and instance generation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "minorfree/campaign.hpp"
#include "minorfree/family.hpp"
#include "minorfree/generators.hpp"
#include "minorfree/graph.hpp"
#include "minorfree/tester.hpp"

using namespace minorfree;

namespace {

// Where a subcommand gets its graph: a file, or a generator run.
struct GraphSource {
  std::string file;
  std::string generator = "outerplanar";
  Vertex n = 1000;
  int delta = 4;
  double cycle_prob = 0.3;
  bool connect = false;

  void add_options(CLI::App* app) {
    app->add_option("-g,--graph", file, "Read the graph from this file ('-' for stdin)");
    app->add_option("--gen", generator, "Generator when no file is given")
        ->check(CLI::IsMember({"empty", "tree", "outerplanar", "cactus", "planted_far"}));
    app->add_option("-n,--n", n, "Vertex count for generated graphs")->check(CLI::PositiveNumber);
    app->add_option("-d,--delta", delta, "Degree bound")->check(CLI::PositiveNumber);
    app->add_option("--cycle-prob", cycle_prob, "Cactus cycle probability")
        ->check(CLI::Range(0.0, 1.0));
    app->add_flag("--connect", connect, "Chain planted copies into one component");
  }

  // Generated graphs depend on the seed; the note carries the farness certificate.
  Graph load(const ForbiddenFamily& family, double epsilon, std::uint64_t seed,
             std::string* note = nullptr) const {
    if (!file.empty()) {
      if (file == "-") return read_graph(std::cin);
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open '" + file + "'");
      return read_graph(in);
    }
    Rng rng(seed);
    if (generator == "empty") return gen_empty(n, delta);
    if (generator == "tree") return gen_cactus(n, delta, rng, 0.0);
    if (generator == "outerplanar") return gen_outerplanar(n, delta, rng);
    if (generator == "cactus") return gen_cactus(n, delta, rng, cycle_prob);
    auto inst = gen_planted_far(n, delta, family, epsilon, rng, connect);
    if (note) *note = inst.certificate();
    return std::move(inst.graph);
  }
};

void add_tester_options(CLI::App* app, TesterConfig& cfg) {
  auto& p = cfg.partition;
  app->add_option("--sample-coeff", cfg.sample_coeff, "samples = ceil(coeff * f / epsilon)");
  app->add_option("--gamma-coeff", cfg.gamma_coeff, "gamma = coeff * epsilon");
  app->add_option("--alpha-coeff", cfg.alpha_coeff, "alpha = coeff * epsilon / f");
  app->add_option("--const-b", p.const_b, "Constant in the range of ell");
  app->add_option("--const-c", p.const_c, "Constant in the cluster cap t");
  app->add_option("--center-coeff", p.center_count_coeff, "Constant in the number of centers");
  app->add_option("--y-coeff", p.y_coeff, "Constant in the exploration cap y");
  app->add_option("--mark-prob", p.mark_probability, "Mark probability (default n^-1/3)");
  app->add_option("--budget", cfg.query_budget, "Query budget; exhaustion is inconclusive");
  app->add_flag("!--no-reuse", cfg.reuse_answers, "Query adjacency lists again on every read");
}

int cmd_test(const GraphSource& src, TesterConfig cfg, const std::string& family_spec,
             std::uint64_t seed, const std::string& witness_path) {
  const ForbiddenFamily family = parse_family(family_spec);
  cfg.family = &family;
  std::string note;
  Graph g = src.load(family, cfg.epsilon, seed, &note);
  QueryOracle oracle(g, cfg.query_budget);
  Verdict v = test_minor_freeness(oracle, cfg, seed);
  auto j = verdict_json(v, family);
  j["n"] = g.size();
  j["delta"] = g.delta();
  if (!note.empty()) j["instance"] = note;
  if (v.rejected()) j["recheck"] = static_cast<bool>(recheck_verdict(g, family, v));
  std::cout << j.dump(2) << "\n";
  if (!witness_path.empty() && v.embedding) {
    std::ofstream out(witness_path);
    write_witness(out, family.members[v.member], *v.embedding);
  }
  return v.rejected() ? 1 : v.kind == VerdictKind::kInconclusive ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property tester for minor-freeness of bounded-degree graphs"};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand("test", "Run the tester once and print a JSON verdict");
  GraphSource test_src;
  TesterConfig test_cfg;
  std::string test_family = "outerplanar", witness_path;
  std::uint64_t test_seed = 0;
  test_src.add_options(test);
  add_tester_options(test, test_cfg);
  test->add_option("-f,--family", test_family, "Forbidden family, e.g. outerplanar, diamond, k4,k23");
  test->add_option("-e,--epsilon", test_cfg.epsilon, "Distance parameter")
      ->check(CLI::Range(0.0, 1.0));
  test->add_option("-s,--seed", test_seed, "Seed for the tester and any generator");
  test->add_option("-w,--witness", witness_path, "Write a rejection embedding to this file");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Run trials from a key-value spec file");
  std::string spec_path, csv_path = "campaign.csv";
  std::optional<unsigned> threads;
  bool timing = false;
  campaign->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  campaign->add_option("-o,--output", csv_path, "CSV output path");
  campaign->add_option("-j,--threads", threads, "Worker threads (default: from spec)");
  campaign->add_flag("--timing", timing, "Record wall time (CSV stops being reproducible)");

  // stats
  auto* stats = app.add_subcommand("stats", "Partition statistics against the partition bounds");
  GraphSource stats_src;
  PartitionConfig stats_cfg;
  std::size_t stats_trials = 20;
  std::uint64_t stats_seed = 0;
  stats_src.add_options(stats);
  stats->add_option("--trials", stats_trials, "Partitions to build")->check(CLI::PositiveNumber);
  stats->add_option("-s,--seed", stats_seed, "First seed");
  stats->add_option("--gamma", stats_cfg.gamma, "gamma")->check(CLI::Range(1e-9, 1.0));
  stats->add_option("--alpha", stats_cfg.alpha, "alpha")->check(CLI::Range(1e-300, 1.0));
  stats->add_option("--const-b", stats_cfg.const_b, "Constant in the range of ell");
  stats->add_option("--const-c", stats_cfg.const_c, "Constant in the cluster cap t");
  stats->add_option("--center-coeff", stats_cfg.center_count_coeff, "Constant in |S|");
  stats->add_option("--y-coeff", stats_cfg.y_coeff, "Constant in the exploration cap y");
  stats->add_option("--mark-prob", stats_cfg.mark_probability, "Mark probability");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a generated graph");
  GraphSource gen_src;
  std::string gen_family = "diamond", gen_out;
  double gen_epsilon = 0.1;
  std::uint64_t gen_seed = 0;
  gen_src.add_options(gen);
  gen->add_option("-f,--family", gen_family, "Family for planted instances");
  gen->add_option("-e,--epsilon", gen_epsilon, "Farness target for planted instances")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("-s,--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) return cmd_test(test_src, test_cfg, test_family, test_seed, witness_path);

    if (*campaign) {
      std::ifstream in(spec_path);
      ExperimentSpec spec = parse_spec(in);
      if (threads) spec.threads = *threads;
      if (timing) spec.timing = true;
      auto summary = run_campaign(spec, csv_path);
      print_summary(std::cout, summary);
      return summary.recheck_failures == 0 ? 0 : 2;
    }

    if (*stats) {
      const ForbiddenFamily family = parse_family("diamond");
      Graph g = stats_src.load(family, 0.1, stats_seed);
      print_partition_stats(std::cout, partition_stats(g, stats_cfg, stats_trials, stats_seed));
      return 0;
    }

    if (*gen) {
      const ForbiddenFamily family = parse_family(gen_family);
      std::string note;
      Graph g = gen_src.load(family, gen_epsilon, gen_seed, &note);
      if (!note.empty()) std::cerr << note << "\n";
      if (gen_out.empty()) {
        write_graph(std::cout, g);
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot open '" + gen_out + "'");
        write_graph(out, g);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
