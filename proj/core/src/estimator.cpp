#include "vlmc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vlmc {

namespace {

void check_params(const EstimationParams& params, int64_t n) {
  if (!(params.delta > 0.0)) throw invalid_input("delta must be positive");
  if (params.d < 1) throw invalid_input("depth d must be >= 1");
  if (n <= params.d) throw precondition_violation("degenerate sample: need n > d");
}

}  // namespace

EstimationResult estimate(const CountTrie& trie, const EstimationParams& params) {
  check_params(params, trie.sample_size());
  if (params.d > trie.depth()) {
    throw depth_exceeded("trie was built with a smaller depth budget than requested");
  }
  const Alphabet& alphabet = trie.alphabet();
  const int A = alphabet.size();
  const double delta = params.delta;
  const int d = params.d;

  // Observed words, lengths 1..d, plus their delta values.
  std::vector<Word> observed;
  trie.for_each_word([&](const Word& w, int64_t) {
    if (static_cast<int>(w.size()) <= d) observed.push_back(w);
  });

  // An observed word v = uw with Delta(v) > delta rules out every proper
  // suffix w of v.
  std::set<Word> killed;
  for (const Word& v : observed) {
    if (v.size() < 2) continue;
    if (trie.count_dot(v) >= 1 && trie.delta(v) > delta) {
      for (size_t cut = 1; cut < v.size(); ++cut) killed.insert(v.substr(cut));
    }
  }

  std::vector<Word> selected;
  for (const Word& w : observed) {
    if (killed.count(w)) continue;
    bool keep = false;
    for (int a = 0; a < A && !keep; ++a) {
      Word aw = alphabet.at(a) + w;
      if (trie.count_following(aw) > 0) {
        Word a_parent = alphabet.at(a) + suf(w);
        keep = trie.delta(a_parent) > delta;
      }
    }
    if (keep) selected.push_back(w);
  }

  EstimationResult result = attach_rows(trie, ContextTree(alphabet, std::move(selected)));
  result.params = params;
  return result;
}

namespace {

// Recounting primitives for the brute-force evaluator; deliberately naive
// and independent of CountTrie.
struct Recounter {
  const std::vector<uint8_t>& x;
  const Alphabet& alphabet;

  int64_t occurrences(const std::vector<uint8_t>& w, bool need_successor) const {
    if (w.empty()) return static_cast<int64_t>(x.size());
    int64_t total = 0;
    const size_t limit = need_successor ? x.size() - w.size() : x.size() - w.size() + 1;
    if (w.size() > x.size()) return 0;
    for (size_t t = 0; t < limit; ++t) {
      bool match = true;
      for (size_t j = 0; j < w.size() && match; ++j) match = x[t + j] == w[j];
      if (match) ++total;
    }
    return total;
  }

  double phat(int a, std::vector<uint8_t> w) const {
    const int A = alphabet.size();
    w.push_back(static_cast<uint8_t>(a));
    int64_t wa = occurrences(w, false);
    int64_t wdot = 0;
    for (int b = 0; b < A; ++b) {
      w.back() = static_cast<uint8_t>(b);
      wdot += occurrences(w, false);
    }
    return static_cast<double>(wa + 1) / static_cast<double>(wdot + A);
  }

  double delta_of(const std::vector<uint8_t>& w) const {
    std::vector<uint8_t> parent(w.begin() + 1, w.end());
    double gap = 0.0;
    for (int a = 0; a < alphabet.size(); ++a) {
      gap = std::max(gap, std::abs(phat(a, w) - phat(a, parent)));
    }
    return gap;
  }

  int64_t count_dot(std::vector<uint8_t> w) const {
    const int A = alphabet.size();
    int64_t total = 0;
    w.push_back(0);
    for (int b = 0; b < A; ++b) {
      w.back() = static_cast<uint8_t>(b);
      total += occurrences(w, false);
    }
    return total;
  }
};

void enumerate_words(const Alphabet& alphabet, int len, std::vector<uint8_t>& word,
                     const std::function<void(const std::vector<uint8_t>&)>& fn) {
  if (static_cast<int>(word.size()) == len) {
    fn(word);
    return;
  }
  for (int a = 0; a < alphabet.size(); ++a) {
    word.push_back(static_cast<uint8_t>(a));
    enumerate_words(alphabet, len, word, fn);
    word.pop_back();
  }
}

}  // namespace

EstimationResult estimate_brute_force(const SamplePath& sample, const EstimationParams& params) {
  check_params(params, sample.size());
  const Alphabet& alphabet = sample.alphabet;
  const int A = alphabet.size();
  const int d = params.d;
  const double delta = params.delta;

  double words = std::pow(static_cast<double>(A), d);
  if (words > 1e6) throw enumeration_too_large("brute-force enumeration exceeds |A|^d <= 10^6");

  Recounter re{sample.symbols, alphabet};
  std::vector<Word> selected;

  for (int len = 1; len <= d; ++len) {
    std::vector<uint8_t> scratch;
    enumerate_words(alphabet, len, scratch, [&](const std::vector<uint8_t>& w) {
      // Existence clause: one symbol a with N(aw.) > 0 and a divergent
      // a-extension of the parent.
      bool keep = false;
      for (int a = 0; a < A && !keep; ++a) {
        std::vector<uint8_t> aw;
        aw.push_back(static_cast<uint8_t>(a));
        aw.insert(aw.end(), w.begin(), w.end());
        if (re.occurrences(aw, true) > 0) {
          std::vector<uint8_t> a_parent;
          a_parent.push_back(static_cast<uint8_t>(a));
          a_parent.insert(a_parent.end(), w.begin() + 1, w.end());
          keep = re.delta_of(a_parent) > delta;
        }
      }
      if (!keep) return;
      // Universal clause over observed extensions within depth d.
      std::vector<uint8_t> u_scratch;
      for (int ulen = 1; ulen <= d - len && keep; ++ulen) {
        enumerate_words(alphabet, ulen, u_scratch, [&](const std::vector<uint8_t>& u) {
          if (!keep) return;
          std::vector<uint8_t> uw(u);
          uw.insert(uw.end(), w.begin(), w.end());
          if (re.count_dot(uw) >= 1 && re.delta_of(uw) > delta) keep = false;
        });
      }
      if (keep) selected.push_back(alphabet.decode(w));
    });
  }

  ContextTree tree(alphabet, std::move(selected));
  EstimationResult result;
  result.tree = tree;
  result.params = params;
  result.provenance = sample.provenance();
  // Rows by recount, still independent of the trie.
  if (tree.empty()) {
    std::vector<uint8_t> lambda;
    Row row(static_cast<size_t>(A));
    for (int a = 0; a < A; ++a) row[static_cast<size_t>(a)] = re.phat(a, lambda);
    result.rows.push_back(std::move(row));
  } else {
    for (const Word& w : tree.contexts()) {
      std::vector<uint8_t> enc = alphabet.encode(w);
      Row row(static_cast<size_t>(A));
      for (int a = 0; a < A; ++a) row[static_cast<size_t>(a)] = re.phat(a, enc);
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

EstimationResult attach_rows(const CountTrie& trie, const ContextTree& tree) {
  if (tree.height() > trie.depth()) {
    throw depth_exceeded("context length exceeds the trie's usable depth");
  }
  const Alphabet& alphabet = trie.alphabet();
  EstimationResult result;
  result.tree = tree;
  result.provenance = trie.provenance();
  if (tree.empty()) {
    Row row(static_cast<size_t>(alphabet.size()));
    for (int a = 0; a < alphabet.size(); ++a) {
      row[static_cast<size_t>(a)] = trie.empirical_prob(alphabet.at(a), Word{});
    }
    result.rows.push_back(std::move(row));
    return result;
  }
  for (const Word& w : tree.contexts()) {
    Row row(static_cast<size_t>(alphabet.size()));
    for (int a = 0; a < alphabet.size(); ++a) {
      row[static_cast<size_t>(a)] = trie.empirical_prob(alphabet.at(a), w);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

bool trees_equal_truncated(const ContextTree& t1, const ContextTree& t2, int K) {
  if (K < 1) throw precondition_violation("truncation level must be >= 1");
  return truncate(t1, K).contexts() == truncate(t2, K).contexts();
}

}  // namespace vlmc
