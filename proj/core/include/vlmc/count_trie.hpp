#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlmc/sampler.hpp"

namespace vlmc {

// Substring counts N_n(w) for every substring of a sample up to length d+1,
// stored in a root-anchored trie with child arrays keyed by alphabet index.
// Counting is from the left (oldest) end: node children extend a word by one
// more recent symbol. Words longer than the budget are rejected, not zero.
class CountTrie {
 public:
  // Counts all substrings of length <= d+1. Throws depth_exceeded when
  // d + 1 > n.
  static CountTrie build(const SamplePath& sample, int d);

  const Alphabet& alphabet() const { return alphabet_; }
  int depth() const { return d_; }            // d: deltas defined up to here
  int budget() const { return d_ + 1; }       // longest stored word
  int64_t sample_size() const { return n_; }
  const std::string& provenance() const { return provenance_; }

  // N_n(w); 0 when w never occurs. N_n(lambda) is the sample length.
  int64_t count(const Word& w) const;

  // N_n(w.) = sum_b N_n(wb), summed over stored children. Length <= d.
  int64_t count_dot(const Word& w) const;

  // N_n(w.) through the boundary identity N_n(w) minus one when the sample
  // ends with w. Valid one level deeper than count_dot (length <= d+1).
  int64_t count_following(const Word& w) const;

  // Smoothed empirical transition (N_n(wa)+1)/(N_n(w.)+|A|); defined for
  // every w of length <= d, unseen words give the uniform row.
  double empirical_prob(char a, const Word& w) const;

  // Delta_n(w) = max_a |phat(a|w) - phat(a|suf(w))| for 1 <= len(w) <= d.
  double delta(const Word& w) const;

  // Visits every stored word with a positive count in depth-then-alphabet
  // order, lengths 1..d+1.
  void for_each_word(const std::function<void(const Word&, int64_t)>& fn) const;

 private:
  CountTrie() = default;

  int node_at(const Word& w) const;  // -1 when the path is absent
  int64_t raw_count(const Word& w) const;
  double smoothed(int a_idx, const Word& w) const;

  Alphabet alphabet_;
  int d_ = 0;
  int64_t n_ = 0;
  std::string provenance_;
  std::vector<uint8_t> tail_;      // last d+1 symbols, for the boundary check
  std::vector<int32_t> children_;  // stride |A|
  std::vector<int64_t> counts_;
};

}  // namespace vlmc
