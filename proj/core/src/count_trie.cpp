#include "vlmc/count_trie.hpp"

#include <algorithm>

namespace vlmc {

CountTrie CountTrie::build(const SamplePath& sample, int d) {
  if (d < 0) throw invalid_input("depth must be >= 0");
  const int64_t n = sample.size();
  if (static_cast<int64_t>(d) + 1 > n) {
    throw depth_exceeded("depth budget d+1 exceeds the sample length");
  }
  CountTrie trie;
  trie.alphabet_ = sample.alphabet;
  trie.d_ = d;
  trie.n_ = n;
  trie.provenance_ = sample.provenance();

  const int A = trie.alphabet_.size();
  const int budget = d + 1;
  trie.children_.assign(static_cast<size_t>(A), -1);
  trie.counts_.assign(1, n);  // root carries N_n(lambda) = n

  const uint8_t* x = sample.symbols.data();
  for (int64_t t = 0; t < n; ++t) {
    int node = 0;
    const int64_t limit = std::min<int64_t>(budget, n - t);
    for (int64_t j = 0; j < limit; ++j) {
      int32_t& slot = trie.children_[static_cast<size_t>(node) * A + x[t + j]];
      if (slot < 0) {
        slot = static_cast<int32_t>(trie.counts_.size());
        trie.counts_.push_back(0);
        trie.children_.resize(trie.children_.size() + static_cast<size_t>(A), -1);
      }
      node = slot;
      ++trie.counts_[static_cast<size_t>(node)];
    }
  }
  trie.tail_.assign(sample.symbols.end() - std::min<int64_t>(budget, n), sample.symbols.end());
  return trie;
}

int CountTrie::node_at(const Word& w) const {
  const int A = alphabet_.size();
  int node = 0;
  for (char c : w) {
    int sym = alphabet_.index_of(c);
    if (sym < 0) throw invalid_input(std::string("symbol '") + c + "' is not in the alphabet");
    node = children_[static_cast<size_t>(node) * A + sym];
    if (node < 0) return -1;
  }
  return node;
}

int64_t CountTrie::raw_count(const Word& w) const {
  int node = node_at(w);
  return node < 0 ? 0 : counts_[static_cast<size_t>(node)];
}

int64_t CountTrie::count(const Word& w) const {
  if (static_cast<int>(w.size()) > budget()) {
    throw depth_exceeded("word is longer than the depth budget");
  }
  return raw_count(w);
}

int64_t CountTrie::count_dot(const Word& w) const {
  if (static_cast<int>(w.size()) > d_) {
    throw depth_exceeded("count_dot needs one symbol of headroom below the budget");
  }
  const int A = alphabet_.size();
  int node = node_at(w);
  if (node < 0) return 0;
  int64_t total = 0;
  for (int a = 0; a < A; ++a) {
    int child = children_[static_cast<size_t>(node) * A + a];
    if (child >= 0) total += counts_[static_cast<size_t>(child)];
  }
  return total;
}

int64_t CountTrie::count_following(const Word& w) const {
  if (static_cast<int>(w.size()) > budget()) {
    throw depth_exceeded("word is longer than the depth budget");
  }
  if (w.empty()) return n_;  // every position has a successor slot by convention
  int64_t c = raw_count(w);
  if (c == 0) return 0;
  // The final occurrence has no successor exactly when the sample ends in w.
  bool at_end = w.size() <= tail_.size();
  if (at_end) {
    for (size_t i = 0; i < w.size() && at_end; ++i) {
      at_end = alphabet_.index_of(w[i]) == tail_[tail_.size() - w.size() + i];
    }
  }
  return at_end ? c - 1 : c;
}

double CountTrie::smoothed(int a_idx, const Word& w) const {
  const int A = alphabet_.size();
  int node = node_at(w);
  int64_t wa = 0, wdot = 0;
  if (node >= 0) {
    for (int a = 0; a < A; ++a) {
      int child = children_[static_cast<size_t>(node) * A + a];
      if (child >= 0) {
        wdot += counts_[static_cast<size_t>(child)];
        if (a == a_idx) wa = counts_[static_cast<size_t>(child)];
      }
    }
  }
  return static_cast<double>(wa + 1) / static_cast<double>(wdot + A);
}

double CountTrie::empirical_prob(char a, const Word& w) const {
  if (static_cast<int>(w.size()) > d_) {
    throw depth_exceeded("empirical probabilities are defined up to length d");
  }
  int a_idx = alphabet_.index_of(a);
  if (a_idx < 0) throw invalid_input(std::string("symbol '") + a + "' is not in the alphabet");
  return smoothed(a_idx, w);
}

double CountTrie::delta(const Word& w) const {
  if (w.empty()) throw invalid_input("delta needs a word of length >= 1");
  if (static_cast<int>(w.size()) > d_) {
    throw depth_exceeded("delta is defined up to length d");
  }
  alphabet_.check_word(w);
  Word parent = suf(w);
  double gap = 0.0;
  for (int a = 0; a < alphabet_.size(); ++a) {
    gap = std::max(gap, std::abs(smoothed(a, w) - smoothed(a, parent)));
  }
  return gap;
}

void CountTrie::for_each_word(const std::function<void(const Word&, int64_t)>& fn) const {
  // Depth-then-lexicographic: walk each level in alphabet DFS order.
  const int A = alphabet_.size();
  struct Item {
    int node;
    Word word;
  };
  std::vector<Item> level{{0, Word{}}};
  for (int len = 1; len <= budget(); ++len) {
    std::vector<Item> next;
    for (const Item& it : level) {
      for (int a = 0; a < A; ++a) {
        int child = children_[static_cast<size_t>(it.node) * A + a];
        if (child >= 0) next.push_back({child, it.word + alphabet_.at(a)});
      }
    }
    for (const Item& it : next) fn(it.word, counts_[static_cast<size_t>(it.node)]);
    level = std::move(next);
  }
}

}  // namespace vlmc
