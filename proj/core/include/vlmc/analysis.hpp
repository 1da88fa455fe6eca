#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlmc/model.hpp"
#include "vlmc/stationary.hpp"

namespace vlmc {

// Loss-of-memory coefficients alpha_0..alpha_kmax together with the full
// tail sum alpha = sum_{k>=0} (1 - alpha_k).
struct AlphaSequence {
  std::vector<double> values;
  double sum = 0.0;
};

// Return probabilities rho_0..rho_mmax of the renewal chain driven by the
// alpha coefficients (advance from x with probability alpha_x, fall back to
// the origin otherwise), plus their partial sum.
struct RhoSequence {
  std::vector<double> values;
  double partial_sum = 0.0;
};

// The words of the level-k truncation whose conditional law differs from
// their parent's, and the smallest max-gap among them (C_k and D_k). min_gap
// is +infinity when the set is empty.
struct DivergenceSet {
  std::vector<Word> words;
  double min_gap = 0.0;
};

struct RecoveryBoundQuery {
  int64_t n = 0;
  double delta = 0.0;
  int d = 0;
};

// Everything the `analyze` subcommand serializes.
struct BoundReport {
  std::vector<double> alpha_seq;  // k = 0..k_max
  double alpha_sum = 0.0;
  double C = 0.0;
  std::vector<double> D;        // k = 1..k_max, +inf sentinel for empty C_k
  std::vector<double> epsilon;  // k = 0..k_max
  std::vector<double> rho_seq;  // l = 0..l_max
  double rho_sum = 0.0;
  int d_min = 0;
  int K = 0;
  std::optional<RecoveryBoundQuery> query;
  double recovery_bound = 0.0;          // valid when query set and violation empty
  std::string recovery_violation;
};

RhoSequence rho_sequence(const std::vector<double>& alphas, int m_max);

// Computes every theoretical quantity of a model: stationary law, word and
// conditional probabilities, alpha/rho sequences, divergence sets, epsilon,
// minimal admissible depth and the three exponential bounds. Immutable after
// construction; all methods are const and safe to call concurrently.
//
// Finite models are embedded over A^h; the comb is handled through its exact
// age chain (the count of zeros since the last 1), with ages at or beyond the
// fold depth sharing one transition probability.
class Analyzer {
 public:
  explicit Analyzer(Model model);

  const Model& model() const { return model_; }
  const Alphabet& alphabet() const { return model_.alphabet(); }

  // Finite models only; throws invalid_input for the comb.
  const StationaryLaw& stationary() const;

  double word_probability(const Word& w) const;
  // p(a|v) = p(va)/p(v); equals the context row entry when v resolves.
  double conditional_probability(char a, const Word& v) const;
  Row conditional_row(const Word& v) const;

  AlphaSequence alpha_sequence(int k_max) const;
  std::vector<double> alphas_upto(int m) const;
  double alpha_zero() const;
  double alpha_total() const;
  // C = alpha_0 / (8 e (alpha + alpha_0)).
  double constant_C() const;

  DivergenceSet divergence_set(int k) const;
  double epsilon(int k) const;
  int minimal_depth(int K) const;

  double bound_count_deviation(const Word& w, char a, double t, int64_t n) const;
  double bound_phat_deviation(const Word& w, char a, double t, int64_t n) const;
  double bound_recovery(int K, int d, double delta, int64_t n) const;

  ContextTree true_tree_truncated(int K) const;

  BoundReport report(int k_max, int K, int l_max,
                     const std::optional<RecoveryBoundQuery>& query = std::nullopt) const;

 private:
  Model model_;

  // Finite path.
  std::optional<StationaryLaw> law_;
  std::string law_error_;
  bool covering_ = true;  // every length-h past resolves to a context

  // Comb path: age chain folded at `fold_`; the last state means
  // "age >= fold".
  struct AgeChain {
    int fold = 0;
    std::vector<double> q;   // q[j] for j = 0..fold
    std::vector<double> pi;  // stationary age distribution, size fold+1
  };
  std::optional<AgeChain> chain_;

  double finite_word_probability(const std::vector<uint8_t>& w) const;
  std::vector<double> comb_distribution_after(const std::vector<uint8_t>& w) const;
  double finite_alpha_k(int k) const;
  void epsilon_scan(std::vector<uint8_t>& word, double prob, std::vector<double>& dist, int k,
                    double& best) const;
};

}  // namespace vlmc
