#include "vlmc/context_tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vlmc {

ContextTree::ContextTree(Alphabet alphabet, std::vector<Word> contexts)
    : alphabet_(std::move(alphabet)) {
  for (const Word& w : contexts) {
    if (w.empty()) throw invalid_input("context words must have length >= 1");
    alphabet_.check_word(w);
  }
  std::sort(contexts.begin(), contexts.end(), word_less);
  contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
  contexts_ = std::move(contexts);
}

int ContextTree::height() const {
  size_t h = 0;
  for (const Word& w : contexts_) h = std::max(h, w.size());
  return static_cast<int>(h);
}

bool ContextTree::contains(const Word& w) const {
  return std::binary_search(contexts_.begin(), contexts_.end(), w, word_less);
}

ProbabilisticContextTree::ProbabilisticContextTree(ContextTree tree, std::vector<Row> rows)
    : tree_(std::move(tree)), rows_(std::move(rows)) {
  size_t expected = tree_.empty() ? 1 : static_cast<size_t>(tree_.size());
  if (rows_.size() != expected) {
    throw invalid_input("row count does not match context count");
  }
  for (const Row& r : rows_) {
    if (static_cast<int>(r.size()) != tree_.alphabet().size()) {
      throw invalid_input("row length does not match alphabet size");
    }
  }
  build_trie();
}

const Row& ProbabilisticContextTree::lambda_row() const {
  if (!memoryless()) throw invalid_input("lambda row only exists for the memoryless model");
  return rows_.front();
}

void ProbabilisticContextTree::build_trie() {
  const int A = tree_.alphabet().size();
  if (A == 0) return;
  trie_children_.assign(static_cast<size_t>(A), -1);
  trie_terminal_.assign(1, -1);
  for (int ci = 0; ci < tree_.size(); ++ci) {
    const Word& w = tree_.contexts()[static_cast<size_t>(ci)];
    int node = 0;
    // Walk most recent symbol first.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int sym = tree_.alphabet().index_of(*it);
      int& slot = trie_children_[static_cast<size_t>(node * A + sym)];
      if (slot < 0) {
        slot = static_cast<int>(trie_terminal_.size());
        trie_terminal_.push_back(-1);
        trie_children_.resize(trie_children_.size() + static_cast<size_t>(A), -1);
      }
      node = slot;
    }
    trie_terminal_[static_cast<size_t>(node)] = ci;
  }
}

ContextLookup ProbabilisticContextTree::context_of(const Word& past) const {
  tree_.alphabet().check_word(past);
  std::vector<uint8_t> enc = tree_.alphabet().encode(past);
  return context_of_encoded(enc.data(), enc.size());
}

ContextLookup ProbabilisticContextTree::context_of_encoded(const uint8_t* past, size_t len) const {
  if (memoryless()) {
    return ContextLookup{true, Word{}, rows_.front()};
  }
  const int A = tree_.alphabet().size();
  int node = 0;
  for (size_t i = 0; i < len; ++i) {
    uint8_t sym = past[len - 1 - i];
    int next = trie_children_[static_cast<size_t>(node * A + sym)];
    if (next < 0) break;
    node = next;
    int term = trie_terminal_[static_cast<size_t>(node)];
    if (term >= 0) {
      return ContextLookup{true, tree_.contexts()[static_cast<size_t>(term)],
                           rows_[static_cast<size_t>(term)]};
    }
  }
  return ContextLookup::need_more_past();
}

namespace {

void check_suffix_property(const std::vector<Word>& ctxs, std::vector<std::string>& out) {
  for (size_t i = 0; i < ctxs.size(); ++i) {
    for (size_t j = 0; j < ctxs.size(); ++j) {
      if (i != j && is_proper_suffix(ctxs[i], ctxs[j])) {
        out.push_back("\"" + ctxs[i] + "\" is a suffix of \"" + ctxs[j] + "\"");
      }
    }
  }
}

// A word w is replaceable by a proper suffix s when swapping w for s leaves
// the suffix property intact, i.e. s is suffix-incomparable with every other
// element of the tree.
void check_irreducibility(const std::vector<Word>& ctxs, std::vector<std::string>& out) {
  for (size_t i = 0; i < ctxs.size(); ++i) {
    const Word& w = ctxs[i];
    for (size_t cut = 1; cut < w.size(); ++cut) {
      Word s = w.substr(cut);
      bool clash = false;
      for (size_t j = 0; j < ctxs.size() && !clash; ++j) {
        if (j == i) continue;
        clash = is_suffix_or_equal(s, ctxs[j]) || is_suffix_or_equal(ctxs[j], s);
      }
      if (!clash) {
        out.push_back("\"" + w + "\" is replaceable by its suffix \"" + s + "\"");
        break;
      }
    }
  }
}

}  // namespace

ValidationReport validate_tree(const ContextTree& tree) {
  ValidationReport report;
  check_suffix_property(tree.contexts(), report.suffix_violations);
  check_irreducibility(tree.contexts(), report.irreducibility_violations);
  return report;
}

ValidationReport validate_tree(const ProbabilisticContextTree& model) {
  ValidationReport report = validate_tree(model.tree());
  const double kRowSumTol = 1e-12;
  for (size_t i = 0; i < model.rows().size(); ++i) {
    const Row& r = model.rows()[i];
    const Word label = model.memoryless() ? Word{} : model.tree().contexts()[i];
    double sum = 0.0;
    for (double p : r) {
      sum += p;
      if (p < 0.0 || p > 1.0 || !std::isfinite(p)) {
        report.row_violations.push_back("row of \"" + label + "\" has an entry outside [0,1]");
        break;
      }
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      report.row_violations.push_back("row of \"" + label + "\" sums to " + std::to_string(sum));
    }
    for (double p : r) {
      if (p <= 0.0) {
        report.nonnull_violations.push_back("row of \"" + label + "\" has a zero entry");
        break;
      }
    }
  }
  return report;
}

ContextTree truncate(const ContextTree& tree, int K) {
  if (K < 1) throw precondition_violation("truncation level must be >= 1");
  std::vector<Word> out;
  for (const Word& w : tree.contexts()) {
    if (static_cast<int>(w.size()) <= K) {
      out.push_back(w);
    } else {
      out.push_back(w.substr(w.size() - static_cast<size_t>(K)));
    }
  }
  return ContextTree(tree.alphabet(), std::move(out));
}

}  // namespace vlmc
