#pragma once

#include <cstdint>
#include <memory>

#include "vlmc/context_tree.hpp"

namespace vlmc {

// Lazily evaluated, possibly unbounded context tree. Given a finite past it
// either resolves the context (a suffix of the past) together with its
// transition row, or reports that more past is needed. Answers are
// consistent: extending a resolved past never changes the answer.
class ContextOracle {
 public:
  virtual ~ContextOracle() = default;
  virtual const Alphabet& alphabet() const = 0;
  virtual ContextLookup lookup(const Word& past) const = 0;
  // The true tree truncated to level K, as an explicit finite tree.
  virtual ContextTree truncated_tree(int K) const = 0;
};

// The comb family over {0,1}: contexts are "1" followed by j zeros, with
// p(1 | 1 0^j) = qinf + (q0 - qinf) * gamma^j. Both tail assumptions hold in
// closed form: 1 - alpha_k = |q0 - qinf| * gamma^k.
class CombSpec final : public ContextOracle {
 public:
  double q0 = 0.5;
  double qinf = 0.5;
  double gamma = 0.5;

  CombSpec() = default;
  CombSpec(double q0_, double qinf_, double gamma_);

  // Throws invalid_input unless q0, qinf in (0,1) and gamma in (0,1).
  void validate() const;

  const Alphabet& alphabet() const override;

  // q_j, the probability of emitting 1 after "1" followed by j zeros.
  double q(int64_t j) const;
  Row row(int64_t j) const { return Row{1.0 - q(j), q(j)}; }

  // Number of trailing zeros of the past, or -1 when the past contains no 1.
  static int64_t age_of(const Word& past);

  ContextLookup lookup(const Word& past) const override;
  ContextTree truncated_tree(int K) const override;

  // Smallest L with |q0 - qinf| * gamma^L below tol: analysis folds all
  // deeper teeth onto depth L.
  int fold_depth(double tol = 1e-9) const;
};

}  // namespace vlmc
