#pragma once

#include <string>
#include <variant>

#include "vlmc/context_tree.hpp"
#include "vlmc/oracle.hpp"

namespace vlmc {

// A model is either a finite probabilistic context tree or the built-in
// unbounded comb family. Immutable after construction.
class Model {
 public:
  Model() = default;
  explicit Model(ProbabilisticContextTree pct) : impl_(std::move(pct)) {}
  explicit Model(CombSpec comb) : impl_(std::move(comb)) {}

  bool is_finite() const { return std::holds_alternative<ProbabilisticContextTree>(impl_); }
  bool is_comb() const { return !is_finite(); }

  const ProbabilisticContextTree& pct() const { return std::get<ProbabilisticContextTree>(impl_); }
  const CombSpec& comb() const { return std::get<CombSpec>(impl_); }

  const Alphabet& alphabet() const {
    return is_finite() ? pct().alphabet() : comb().alphabet();
  }

  ContextLookup context_of(const Word& past) const {
    return is_finite() ? pct().context_of(past) : comb().lookup(past);
  }

  // Short textual identifier used in provenance records.
  std::string describe() const;

 private:
  std::variant<ProbabilisticContextTree, CombSpec> impl_;
};

}  // namespace vlmc
