#include "vlmc/alphabet.hpp"

namespace vlmc {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) {
    throw invalid_input("alphabet needs at least 2 symbols");
  }
  if (symbols_.size() > 16) {
    throw invalid_input("alphabets with more than 16 symbols are not supported");
  }
  for (size_t i = 0; i < symbols_.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(symbols_[i]);
    if (index_[c] >= 0) {
      throw invalid_input(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
    }
    index_[c] = static_cast<int>(i);
  }
}

void Alphabet::check_word(std::string_view w) const {
  for (char c : w) {
    if (!contains(c)) {
      throw invalid_input(std::string("symbol '") + c + "' is not in the alphabet");
    }
  }
}

std::vector<uint8_t> Alphabet::encode(std::string_view w) const {
  std::vector<uint8_t> out;
  out.reserve(w.size());
  for (char c : w) {
    int i = index_of(c);
    if (i < 0) throw invalid_input(std::string("symbol '") + c + "' is not in the alphabet");
    out.push_back(static_cast<uint8_t>(i));
  }
  return out;
}

Word Alphabet::decode(const std::vector<uint8_t>& idx) const {
  Word w;
  w.reserve(idx.size());
  for (uint8_t i : idx) w.push_back(at(i));
  return w;
}

}  // namespace vlmc
