#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vlmc/errors.hpp"

namespace vlmc {

// A word over the alphabet, stored left-to-right in time order: the
// rightmost character is the most recent symbol. The empty string is the
// empty word (lambda).
using Word = std::string;

// Finite ordered alphabet of distinct single-character symbols. The symbol
// order is fixed and defines the layout of every probability row.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  char at(int i) const { return symbols_[static_cast<size_t>(i)]; }
  const std::string& symbols() const { return symbols_; }

  // Index of a symbol, or -1 when it is not part of the alphabet.
  int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }

  bool contains(char c) const { return index_of(c) >= 0; }
  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

  // Throws invalid_input if any character of w is outside the alphabet.
  void check_word(std::string_view w) const;

  // Word <-> symbol-index conversions.
  std::vector<uint8_t> encode(std::string_view w) const;
  Word decode(const std::vector<uint8_t>& idx) const;

 private:
  std::string symbols_;
  std::vector<int> index_ = std::vector<int>(256, -1);
};

// Suffix conventions. s is a (proper) suffix of w when s equals a strict
// trailing segment of w; suf(w) drops the leftmost (oldest) symbol.
inline bool is_proper_suffix(std::string_view s, std::string_view w) {
  return s.size() < w.size() && w.ends_with(s);
}
inline bool is_suffix_or_equal(std::string_view s, std::string_view w) {
  return s.size() <= w.size() && w.ends_with(s);
}
inline Word suf(const Word& w) { return w.empty() ? Word{} : w.substr(1); }

// Canonical ordering used everywhere words are listed: by length, then
// lexicographic. Keeps CLI and CSV output byte-stable.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace vlmc
