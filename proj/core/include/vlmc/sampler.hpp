#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlmc/analysis.hpp"
#include "vlmc/model.hpp"
#include "vlmc/rng.hpp"

namespace vlmc {

// A simulated path x_0..x_{n-1} with its provenance.
struct SamplePath {
  Alphabet alphabet;
  std::vector<uint8_t> symbols;  // alphabet indices
  std::string model_id;
  uint64_t seed = 0;
  int64_t burn_in = 0;  // 0 for finite models (exact stationary start)

  int64_t size() const { return static_cast<int64_t>(symbols.size()); }
  std::string to_string() const;
  std::string provenance() const;
};

// Reusable sampler: resolves per-state rows and cumulative tables once, then
// draws paths deterministically from (n, seed). Safe to share across threads.
class PathSampler {
 public:
  // burn_in applies to oracle models only and must be at least 10^4 there;
  // finite models start exactly stationary and ignore it.
  PathSampler(const Model& model, int64_t burn_in);

  SamplePath sample(int64_t n, uint64_t seed) const;

 private:
  Model model_;
  int64_t burn_in_;
  std::string model_id_;

  // Finite model tables: cumulative row per embedded state and the
  // cumulative stationary law for the initial h-word.
  int height_ = 0;
  int64_t states_ = 1;
  std::vector<double> state_cum_;
  std::vector<double> pi_cum_;

  // Comb: cumulative q per age, folded.
  std::vector<double> comb_q_;
};

// One-shot convenience wrapper around PathSampler.
SamplePath sample_path(const Model& model, int64_t n, uint64_t seed, int64_t burn_in = 10000);

}  // namespace vlmc
