#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlmc/alphabet.hpp"

namespace vlmc {

using Row = std::vector<double>;

// A context tree: a finite set of non-empty words satisfying the suffix
// property (no element is a trailing segment of another). The empty set
// denotes the memoryless model.
class ContextTree {
 public:
  ContextTree() = default;
  // Deduplicates and sorts; rejects words with symbols outside the alphabet
  // or empty words. Does NOT reject suffix-property violations -- use
  // validate_tree to report those.
  ContextTree(Alphabet alphabet, std::vector<Word> contexts);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& contexts() const { return contexts_; }
  bool empty() const { return contexts_.empty(); }
  int size() const { return static_cast<int>(contexts_.size()); }
  int height() const;
  bool contains(const Word& w) const;

  bool operator==(const ContextTree& o) const {
    return alphabet_ == o.alphabet_ && contexts_ == o.contexts_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> contexts_;  // sorted by (length, lex), unique
};

struct ValidationReport {
  std::vector<std::string> suffix_violations;
  std::vector<std::string> irreducibility_violations;
  std::vector<std::string> row_violations;
  std::vector<std::string> nonnull_violations;

  bool valid() const {
    return suffix_violations.empty() && irreducibility_violations.empty() &&
           row_violations.empty() && nonnull_violations.empty();
  }
};

// Result of a context lookup: either the resolved context with its row, or
// a signal that the supplied finite past has no context as a suffix.
struct ContextLookup {
  bool resolved = false;
  Word context;
  Row row;

  static ContextLookup need_more_past() { return {}; }
};

// A context tree together with a transition row per context. For the
// memoryless model (empty tree) a single marginal row is attached instead.
class ProbabilisticContextTree {
 public:
  ProbabilisticContextTree() = default;
  // rows must align with tree.contexts() after (length, lex) sorting; for an
  // empty tree pass exactly one row (the marginal).
  ProbabilisticContextTree(ContextTree tree, std::vector<Row> rows);

  const Alphabet& alphabet() const { return tree_.alphabet(); }
  const ContextTree& tree() const { return tree_; }
  const std::vector<Row>& rows() const { return rows_; }
  bool memoryless() const { return tree_.empty(); }
  int height() const { return tree_.height(); }

  const Row& row_for(int context_index) const { return rows_[static_cast<size_t>(context_index)]; }
  const Row& lambda_row() const;  // marginal row of the memoryless model

  // Unique context that is a suffix of the past, with its row. Walks the
  // past from the most recent symbol backwards; NeedMorePast when no stored
  // context is a trailing segment of the supplied past.
  ContextLookup context_of(const Word& past) const;

  // Same lookup on an index-encoded past (used by the sampler hot path).
  ContextLookup context_of_encoded(const uint8_t* past, size_t len) const;

 private:
  ContextTree tree_;
  std::vector<Row> rows_;
  // Reverse trie over contexts, most recent symbol first. terminal >= 0 is a
  // context index; children are node ids or -1.
  std::vector<int> trie_children_;
  std::vector<int> trie_terminal_;
  void build_trie();
};

// Reports suffix-property violations and irreducibility violations (a word
// replaceable by one of its proper suffixes with the suffix property intact).
ValidationReport validate_tree(const ContextTree& tree);

// Tree checks plus per-row checks: row shape, entries in [0,1], sums within
// 1e-12 of one, and non-nullness (every entry strictly positive).
ValidationReport validate_tree(const ProbabilisticContextTree& model);

// Truncation to level K: contexts of length <= K plus the length-K trailing
// segments of deeper contexts.
ContextTree truncate(const ContextTree& tree, int K);

}  // namespace vlmc
