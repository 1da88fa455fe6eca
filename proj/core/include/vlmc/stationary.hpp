#pragma once

#include <cstdint>
#include <vector>

#include "vlmc/context_tree.hpp"

namespace vlmc {

// Stationary law of a finite model, embedded as a distribution over A^h
// (h = tree height). States are encoded base-|A| with the oldest symbol in
// the most significant digit, so a word w of length <= h occupies the low
// digits of every state that ends with it.
struct StationaryLaw {
  int height = 0;
  int alphabet_size = 0;
  std::vector<double> pi;       // size |A|^h (a single 1.0 when h = 0)
  int64_t iterations = 0;
  double residual = 0.0;

  // Marginal probability of observing word w (length <= height).
  double word_probability(const std::vector<uint8_t>& w) const;
};

// Next-symbol row per embedded state, resolved through the context tree once.
// Throws invalid_input when some length-h past has no context (the tree does
// not cover all pasts).
std::vector<Row> state_rows(const ProbabilisticContextTree& model);

// Power iteration from the uniform vector until the invariance residual
// ||pi P - pi||_inf drops to 1e-10. Throws no_convergence after 1e6 sweeps
// and invalid_input when |A|^h exceeds the 4096-state memory cap.
StationaryLaw stationary_law(const ProbabilisticContextTree& model);

}  // namespace vlmc
