#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlmc/count_trie.hpp"

namespace vlmc {

struct EstimationParams {
  double delta = 0.0;  // pruning threshold, > 0
  int d = 1;           // maximum context length, >= 1
  int K = 1;           // comparison level (used by truncated comparisons only)
};

// Estimated tree with its smoothed empirical rows. An empty tree is the
// memoryless model and carries the single marginal row.
struct EstimationResult {
  ContextTree tree;
  std::vector<Row> rows;
  EstimationParams params;
  std::string provenance;
};

// The context-tree estimator: a word w of length 1..d is kept when some
// symbol a has N(aw.) > 0 together with Delta(a suf(w)) > delta, and no
// observed extension uw within depth d has Delta(uw) > delta. Thresholds are
// compared exactly, with no tolerance.
EstimationResult estimate(const CountTrie& trie, const EstimationParams& params);

// Same predicate evaluated for every word of length 1..d by naive recounting
// of the sample; shares no code with the trie path. Enumeration is guarded
// at |A|^d <= 10^6.
EstimationResult estimate_brute_force(const SamplePath& sample, const EstimationParams& params);

// Smoothed empirical rows for an explicit tree.
EstimationResult attach_rows(const CountTrie& trie, const ContextTree& tree);

// Whether the two trees agree after truncation to level K.
bool trees_equal_truncated(const ContextTree& t1, const ContextTree& t2, int K);

}  // namespace vlmc
