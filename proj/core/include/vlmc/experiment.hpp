#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlmc/analysis.hpp"
#include "vlmc/estimator.hpp"
#include "vlmc/model.hpp"

namespace vlmc {

// Parsed experiment configuration. `config_hash` is a 64-bit FNV-1a digest of
// the canonical JSON form with the model inlined; every CSV row echoes it.
struct ExperimentConfig {
  Model model;
  std::string mode = "recovery";  // or "deviation"
  std::vector<int64_t> n_grid;    // strictly increasing
  double delta = 0.0;
  int d = 0;
  bool d_auto = false;
  int K = 1;
  int replicates = 1;
  uint64_t seed = 0;
  int64_t burn_in = 10000;
  std::string out;

  // Deviation mode only.
  Word dev_word;
  char dev_symbol = '\0';
  int64_t dev_n = 0;
  std::vector<double> t_grid;

  std::string config_hash;
};

// Parses and validates a config JSON document. Model may be inline JSON or a
// file path string. Throws invalid_input on malformed fields and
// precondition_violation when the estimator preconditions fail up front.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& base_dir = "");

struct RecoveryRow {
  int64_t n = 0;
  int failures = 0;
  int replicates = 0;
  double error_freq = 0.0;
  double stderr_ = 0.0;
  std::optional<double> bound;  // absent when the bound preconditions fail
  std::optional<bool> vacuous;  // bound > 1
};

struct RecoveryCurve {
  int d = 0;  // resolved depth (after "auto")
  std::vector<RecoveryRow> rows;
};

struct DeviationRow {
  double t = 0.0;
  double freq = 0.0;
  std::optional<double> bound_thm;  // count-deviation bound at t
  std::optional<double> bound_cor;  // p-hat bound at the translated threshold
};

// Replicates are embarrassingly parallel; results merge in replicate-index
// order so the worker count never changes output bytes.
RecoveryCurve run_recovery_experiment(const ExperimentConfig& config, int threads = 1);
std::vector<DeviationRow> run_deviation_experiment(const ExperimentConfig& config,
                                                   int threads = 1);

// CSV emission. Headers are fixed:
//   n,failures,R,error_freq,stderr,bound,vacuous,config_hash
//   t,freq,bound_thm31,bound_cor32,config_hash
std::string recovery_csv(const ExperimentConfig& config, const RecoveryCurve& curve);
std::string deviation_csv(const ExperimentConfig& config, const std::vector<DeviationRow>& rows);

uint64_t fnv1a64(const std::string& text);

}  // namespace vlmc
