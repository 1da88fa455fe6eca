#include "vlmc/experiment.hpp"

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "vlmc/count_trie.hpp"
#include "vlmc/model_io.hpp"
#include "vlmc/rng.hpp"
#include "vlmc/sampler.hpp"

namespace vlmc {

using nlohmann::json;

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Runs fn(i) for i in [0, total) on `threads` workers. Work items are
// independent; results land in index-addressed slots owned by the caller.
void parallel_for(int64_t total, int threads, const std::function<void(int64_t)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || total <= 1) {
    for (int64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      int64_t i = cursor.fetch_add(1);
      if (i >= total) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& base_dir) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw invalid_input("malformed experiment config JSON");

  ExperimentConfig cfg;
  if (!j.contains("model")) throw invalid_input("config needs a \"model\"");
  json model_json = j.at("model");
  if (model_json.is_string()) {
    std::string path = model_json.get<std::string>();
    if (!base_dir.empty() && !path.empty() && path.front() != '/') path = base_dir + "/" + path;
    cfg.model = load_model_file(path);
  } else {
    cfg.model = load_model_json(model_json.dump());
  }

  cfg.mode = j.value("mode", std::string("recovery"));
  if (cfg.mode != "recovery" && cfg.mode != "deviation") {
    throw invalid_input("mode must be \"recovery\" or \"deviation\"");
  }
  cfg.replicates = j.value("replicates", 1);
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.burn_in = j.value("burn_in", int64_t{10000});
  cfg.out = j.value("out", std::string{});

  if (cfg.replicates < 1) throw invalid_input("replicates must be >= 1");

  if (cfg.mode == "recovery") {
    cfg.n_grid = j.at("n_grid").get<std::vector<int64_t>>();
    if (cfg.n_grid.empty()) throw invalid_input("n_grid must be non-empty");
    for (size_t i = 1; i < cfg.n_grid.size(); ++i) {
      if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
        throw invalid_input("n_grid values must be strictly increasing");
      }
    }
    cfg.delta = j.at("delta").get<double>();
    if (!(cfg.delta > 0.0)) throw invalid_input("delta must be positive");
    const json& d = j.at("d");
    if (d.is_string()) {
      if (d.get<std::string>() != "auto") throw invalid_input("d must be an integer or \"auto\"");
      cfg.d_auto = true;
    } else {
      cfg.d = d.get<int>();
      if (cfg.d < 1) throw invalid_input("d must be >= 1");
    }
    cfg.K = j.at("K").get<int>();
    if (cfg.K < 1) throw invalid_input("K must be >= 1");
  } else {
    cfg.dev_word = j.at("w").get<std::string>();
    std::string a = j.at("a").get<std::string>();
    if (a.size() != 1) throw invalid_input("a must be a single symbol");
    cfg.dev_symbol = a[0];
    cfg.dev_n = j.at("n").get<int64_t>();
    cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
    if (cfg.t_grid.empty()) throw invalid_input("t_grid must be non-empty");
    cfg.model.alphabet().check_word(cfg.dev_word);
    if (!cfg.model.alphabet().contains(cfg.dev_symbol)) {
      throw invalid_input("a is not in the alphabet");
    }
    if (cfg.dev_n <= static_cast<int64_t>(cfg.dev_word.size())) {
      throw precondition_violation("n must exceed the word length");
    }
    if (cfg.replicates < 100) {
      throw precondition_violation("deviation experiments need at least 100 replicates");
    }
  }

  // Canonical form with the model inlined; nlohmann orders keys, so the dump
  // is stable.
  json canon;
  canon["model"] = json::parse(model_to_json(cfg.model, -1));
  canon["mode"] = cfg.mode;
  canon["replicates"] = cfg.replicates;
  canon["seed"] = cfg.seed;
  canon["burn_in"] = cfg.burn_in;
  canon["out"] = cfg.out;
  if (cfg.mode == "recovery") {
    canon["n_grid"] = cfg.n_grid;
    canon["delta"] = cfg.delta;
    if (cfg.d_auto) {
      canon["d"] = "auto";
    } else {
      canon["d"] = cfg.d;
    }
    canon["K"] = cfg.K;
  } else {
    canon["w"] = cfg.dev_word;
    canon["a"] = std::string(1, cfg.dev_symbol);
    canon["n"] = cfg.dev_n;
    canon["t_grid"] = cfg.t_grid;
  }
  cfg.config_hash = hex16(fnv1a64(canon.dump()));
  return cfg;
}

RecoveryCurve run_recovery_experiment(const ExperimentConfig& config, int threads) {
  if (config.mode != "recovery") throw invalid_input("config is not a recovery experiment");
  Analyzer analyzer(config.model);
  RecoveryCurve curve;
  curve.d = config.d_auto ? analyzer.minimal_depth(config.K) : config.d;
  const int d = curve.d;

  // Estimator preconditions, checked up front for the whole grid.
  const int64_t n_min = config.n_grid.front();
  if (n_min <= d) throw precondition_violation("smallest n must exceed d");
  if (static_cast<int64_t>(d) + 1 > n_min) {
    throw precondition_violation("smallest n cannot hold the depth budget d+1");
  }

  ContextTree truth = analyzer.true_tree_truncated(config.K);
  PathSampler sampler(config.model, config.burn_in);

  for (size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const int64_t n = config.n_grid[ni];
    std::vector<uint8_t> failed(static_cast<size_t>(config.replicates), 0);
    parallel_for(config.replicates, threads, [&](int64_t r) {
      uint64_t child = mix_seed(config.seed, static_cast<uint64_t>(ni), static_cast<uint64_t>(r));
      SamplePath path = sampler.sample(n, child);
      CountTrie trie = CountTrie::build(path, d);
      EstimationResult est = estimate(trie, {config.delta, d, config.K});
      failed[static_cast<size_t>(r)] =
          trees_equal_truncated(est.tree, truth, config.K) ? 0 : 1;
    });

    RecoveryRow row;
    row.n = n;
    row.replicates = config.replicates;
    for (uint8_t f : failed) row.failures += f;
    row.error_freq = static_cast<double>(row.failures) / config.replicates;
    row.stderr_ = std::sqrt(row.error_freq * (1.0 - row.error_freq) / config.replicates);
    try {
      double b = analyzer.bound_recovery(config.K, d, config.delta, n);
      row.bound = b;
      row.vacuous = b > 1.0;
    } catch (const precondition_violation&) {
      // Reported as null cells; the row itself is still useful.
    }
    curve.rows.push_back(row);
  }
  return curve;
}

std::vector<DeviationRow> run_deviation_experiment(const ExperimentConfig& config, int threads) {
  if (config.mode != "deviation") throw invalid_input("config is not a deviation experiment");
  Analyzer analyzer(config.model);
  const Word& w = config.dev_word;
  const Word wa = w + config.dev_symbol;
  const int64_t n = config.dev_n;
  const double p_wa = analyzer.word_probability(wa);
  const double p_w = analyzer.word_probability(w);
  const double expected = static_cast<double>(n - static_cast<int64_t>(w.size())) * p_wa;

  PathSampler sampler(config.model, config.burn_in);
  std::vector<uint8_t> target;
  for (char c : wa) target.push_back(static_cast<uint8_t>(config.model.alphabet().index_of(c)));

  std::vector<double> deviations(static_cast<size_t>(config.replicates), 0.0);
  parallel_for(config.replicates, threads, [&](int64_t r) {
    uint64_t child = mix_seed(config.seed, 0, static_cast<uint64_t>(r));
    SamplePath path = sampler.sample(n, child);
    int64_t hits = 0;
    const auto& x = path.symbols;
    for (size_t t = 0; t + target.size() <= x.size(); ++t) {
      bool match = true;
      for (size_t j = 0; j < target.size() && match; ++j) match = x[t + j] == target[j];
      if (match) ++hits;
    }
    deviations[static_cast<size_t>(r)] = std::abs(static_cast<double>(hits) - expected);
  });

  std::vector<DeviationRow> rows;
  for (double t : config.t_grid) {
    DeviationRow row;
    row.t = t;
    int over = 0;
    for (double dev : deviations) {
      if (dev > t) ++over;
    }
    row.freq = static_cast<double>(over) / config.replicates;
    try {
      row.bound_thm = analyzer.bound_count_deviation(w, config.dev_symbol, t, n);
    } catch (const precondition_violation&) {
    }
    try {
      // Count threshold translated onto the conditional-probability scale
      // through the expected denominator (n - l(w)) p(w).
      double t_prob = t / ((static_cast<double>(n) - static_cast<double>(w.size())) * p_w);
      row.bound_cor = analyzer.bound_phat_deviation(w, config.dev_symbol, t_prob, n);
    } catch (const precondition_violation&) {
    }
    rows.push_back(row);
  }
  return rows;
}

std::string recovery_csv(const ExperimentConfig& config, const RecoveryCurve& curve) {
  std::ostringstream os;
  os << "n,failures,R,error_freq,stderr,bound,vacuous,config_hash\n";
  for (const RecoveryRow& row : curve.rows) {
    os << row.n << ',' << row.failures << ',' << row.replicates << ',' << fmt(row.error_freq)
       << ',' << fmt(row.stderr_) << ',';
    if (row.bound) os << fmt(*row.bound);
    os << ',';
    if (row.vacuous) os << (*row.vacuous ? "true" : "false");
    os << ',' << config.config_hash << '\n';
  }
  return os.str();
}

std::string deviation_csv(const ExperimentConfig& config, const std::vector<DeviationRow>& rows) {
  std::ostringstream os;
  os << "t,freq,bound_thm31,bound_cor32,config_hash\n";
  for (const DeviationRow& row : rows) {
    os << fmt(row.t) << ',' << fmt(row.freq) << ',';
    if (row.bound_thm) os << fmt(*row.bound_thm);
    os << ',';
    if (row.bound_cor) os << fmt(*row.bound_cor);
    os << ',' << config.config_hash << '\n';
  }
  return os.str();
}

}  // namespace vlmc
