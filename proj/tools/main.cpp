// vlmc: simulate, estimate and analyze variable-length Markov chain models.
//
// Subcommands:
//   sample      draw a reproducible path from a model
//   estimate    run the context-tree estimator on a sample file
//   analyze     theoretical quantities and exponential bounds of a model
//   experiment  Monte Carlo recovery / deviation experiments to CSV
//
// Exit codes: 0 success, 2 precondition violation, 3 invalid input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"

#include "vlmc/analysis.hpp"
#include "vlmc/count_trie.hpp"
#include "vlmc/estimator.hpp"
#include "vlmc/experiment.hpp"
#include "vlmc/model_io.hpp"
#include "vlmc/sampler.hpp"

namespace {

struct SampleArgs {
  std::string model;
  int64_t n = 0;
  uint64_t seed = 0;
  int64_t burn_in = 10000;
  std::string out;
};

struct EstimateArgs {
  std::string sample;
  double delta = 0.0;
  int depth = 0;
  std::optional<int> K;
  std::string truth;
  std::string dump_counts;
};

struct AnalyzeArgs {
  std::string model;
  int kmax = 20;
  int K = 1;
  int lmax = 100;
  std::optional<int64_t> n;
  std::optional<double> delta;
  std::optional<int> d;
};

struct ExperimentArgs {
  std::string config;
  std::string out;
  int threads = 0;
};

int run_sample(const SampleArgs& args) {
  vlmc::Model model = vlmc::load_model_file(args.model);
  vlmc::SamplePath path = vlmc::sample_path(model, args.n, args.seed, args.burn_in);
  vlmc::write_sample(path, model, args.out);
  std::cout << "wrote " << args.out << " (" << path.size() << " symbols)\n";
  return 0;
}

int run_estimate(const EstimateArgs& args) {
  if (args.K.has_value() != !args.truth.empty()) {
    throw vlmc::invalid_input("--K and --truth must be given together");
  }
  vlmc::SamplePath sample = vlmc::read_sample(args.sample);

  std::optional<vlmc::Model> truth;
  if (!args.truth.empty()) {
    truth = vlmc::load_model_file(args.truth);
    if (!(truth->alphabet() == sample.alphabet)) {
      // The truth model is authoritative for the alphabet when the sample
      // came without a sidecar (an inferred alphabet can miss symbols).
      std::string text = sample.to_string();
      sample.alphabet = truth->alphabet();
      sample.alphabet.check_word(text);
      sample.symbols = sample.alphabet.encode(text);
    }
  }

  vlmc::CountTrie trie = vlmc::CountTrie::build(sample, args.depth);
  vlmc::EstimationResult result = vlmc::estimate(trie, {args.delta, args.depth, args.K.value_or(1)});

  int match_state = -1;
  if (truth) {
    vlmc::Analyzer analyzer(*truth);
    vlmc::ContextTree truncated = analyzer.true_tree_truncated(*args.K);
    match_state = vlmc::trees_equal_truncated(result.tree, truncated, *args.K) ? 1 : 0;
  }

  if (!args.dump_counts.empty()) {
    std::ostringstream csv;
    trie.for_each_word([&](const vlmc::Word& w, int64_t c) { csv << w << ',' << c << '\n'; });
    if (args.dump_counts == "-") {
      std::cout << csv.str();
    } else {
      std::ofstream out(args.dump_counts, std::ios::binary);
      if (!out) throw vlmc::invalid_input("cannot write " + args.dump_counts);
      out << csv.str();
    }
  }

  std::cout << vlmc::estimation_to_json(result, match_state) << '\n';
  return 0;
}

int run_analyze(const AnalyzeArgs& args) {
  vlmc::Model model = vlmc::load_model_file(args.model);
  vlmc::Analyzer analyzer(model);
  std::optional<vlmc::RecoveryBoundQuery> query;
  if (args.n || args.delta || args.d) {
    if (!(args.n && args.delta && args.d)) {
      throw vlmc::invalid_input("--n, --delta and --d must be given together");
    }
    query = vlmc::RecoveryBoundQuery{*args.n, *args.delta, *args.d};
  }
  vlmc::BoundReport report = analyzer.report(args.kmax, args.K, args.lmax, query);
  std::cout << vlmc::bound_report_to_json(report) << '\n';
  return 0;
}

int run_experiment(const ExperimentArgs& args) {
  std::ifstream in(args.config, std::ios::binary);
  if (!in) throw vlmc::invalid_input("cannot open " + args.config);
  std::ostringstream text;
  text << in.rdbuf();
  std::string base_dir = std::filesystem::path(args.config).parent_path().string();
  vlmc::ExperimentConfig config = vlmc::parse_experiment_config(text.str(), base_dir);
  if (!args.out.empty()) config.out = args.out;
  if (config.out.empty()) throw vlmc::invalid_input("no output path: set --out or \"out\" in the config");

  int threads = args.threads > 0 ? args.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  std::string csv;
  if (config.mode == "recovery") {
    csv = vlmc::recovery_csv(config, vlmc::run_recovery_experiment(config, threads));
  } else {
    csv = vlmc::deviation_csv(config, vlmc::run_deviation_experiment(config, threads));
  }
  std::ofstream out(config.out, std::ios::binary);
  if (!out) throw vlmc::invalid_input("cannot write " + config.out);
  out << csv;
  std::cout << "wrote " << config.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-length Markov chain modeling toolkit"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "simulate a sample path");
  sample->add_option("--model", sample_args.model, "model JSON file")->required();
  sample->add_option("--n", sample_args.n, "path length")->required();
  sample->add_option("--seed", sample_args.seed, "64-bit seed")->required();
  sample->add_option("--burn-in", sample_args.burn_in,
                     "burn-in for oracle models (>= 10^4); ignored for finite models");
  sample->add_option("--out", sample_args.out, "output file")->required();

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate", "estimate a context tree from a sample");
  estimate->add_option("--sample", estimate_args.sample, "sample file")->required();
  estimate->add_option("--delta", estimate_args.delta, "pruning threshold")->required();
  estimate->add_option("--depth", estimate_args.depth, "maximum context length d")->required();
  estimate->add_option("--K", estimate_args.K, "comparison level for --truth");
  estimate->add_option("--truth", estimate_args.truth, "true model JSON for the truncated comparison");
  estimate->add_option("--dump-counts", estimate_args.dump_counts,
                       "write word,count CSV lines here ('-' for stdout)");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "theoretical quantities and bounds");
  analyze->add_option("--model", analyze_args.model, "model JSON file")->required();
  analyze->add_option("--kmax", analyze_args.kmax, "report depth for alpha/D/epsilon");
  analyze->add_option("--K", analyze_args.K, "truncation level for d_min");
  analyze->add_option("--lmax", analyze_args.lmax, "length of the rho sequence");
  analyze->add_option("--n", analyze_args.n, "sample size for the recovery bound");
  analyze->add_option("--delta", analyze_args.delta, "threshold for the recovery bound");
  analyze->add_option("--d", analyze_args.d, "depth for the recovery bound");

  ExperimentArgs experiment_args;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  experiment->add_option("--config", experiment_args.config, "experiment config JSON")->required();
  experiment->add_option("--out", experiment_args.out, "output CSV (overrides the config)");
  experiment->add_option("--threads", experiment_args.threads, "worker count (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*sample) return run_sample(sample_args);
    if (*estimate) return run_estimate(estimate_args);
    if (*analyze) return run_analyze(analyze_args);
    if (*experiment) return run_experiment(experiment_args);
  } catch (const vlmc::invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const vlmc::precondition_violation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const vlmc::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
