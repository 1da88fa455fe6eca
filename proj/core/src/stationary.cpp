#include "vlmc/stationary.hpp"

#include <cmath>

namespace vlmc {

namespace {
constexpr int64_t kMaxStates = 4096;
constexpr double kResidualTol = 1e-10;
constexpr int64_t kMaxIterations = 1000000;

int64_t checked_state_count(int alphabet_size, int height) {
  int64_t states = 1;
  for (int i = 0; i < height; ++i) {
    states *= alphabet_size;
    if (states > kMaxStates) {
      throw invalid_input("stationary embedding exceeds the 4096-state cap");
    }
  }
  return states;
}
}  // namespace

double StationaryLaw::word_probability(const std::vector<uint8_t>& w) const {
  if (static_cast<int>(w.size()) > height) {
    throw precondition_violation("word longer than the embedding depth");
  }
  int64_t low = 0;
  for (uint8_t s : w) low = low * alphabet_size + s;
  int64_t block = 1;
  for (size_t i = 0; i < w.size(); ++i) block *= alphabet_size;
  double total = 0.0;
  for (int64_t high = 0; high * block < static_cast<int64_t>(pi.size()); ++high) {
    total += pi[static_cast<size_t>(high * block + low)];
  }
  return total;
}

std::vector<Row> state_rows(const ProbabilisticContextTree& model) {
  const int A = model.alphabet().size();
  const int h = model.height();
  int64_t states = checked_state_count(A, h);
  std::vector<Row> rows(static_cast<size_t>(states));
  std::vector<uint8_t> word(static_cast<size_t>(h));
  for (int64_t s = 0; s < states; ++s) {
    int64_t x = s;
    for (int i = h - 1; i >= 0; --i) {
      word[static_cast<size_t>(i)] = static_cast<uint8_t>(x % A);
      x /= A;
    }
    ContextLookup lk = model.context_of_encoded(word.data(), word.size());
    if (!lk.resolved) {
      throw invalid_input("tree does not determine all pasts of its own height");
    }
    rows[static_cast<size_t>(s)] = lk.row;
  }
  return rows;
}

StationaryLaw stationary_law(const ProbabilisticContextTree& model) {
  const int A = model.alphabet().size();
  const int h = model.height();
  int64_t states = checked_state_count(A, h);

  StationaryLaw law;
  law.height = h;
  law.alphabet_size = A;

  if (h == 0) {
    law.pi = {1.0};
    return law;
  }

  std::vector<Row> rows = state_rows(model);
  std::vector<double> pi(static_cast<size_t>(states), 1.0 / static_cast<double>(states));
  std::vector<double> next(static_cast<size_t>(states));
  const int64_t block = states / A;  // successor state = (s mod block)*A + a

  for (int64_t it = 1; it <= kMaxIterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int64_t s = 0; s < states; ++s) {
      double mass = pi[static_cast<size_t>(s)];
      if (mass == 0.0) continue;
      const Row& r = rows[static_cast<size_t>(s)];
      int64_t base = (s % block) * A;
      for (int a = 0; a < A; ++a) {
        next[static_cast<size_t>(base + a)] += mass * r[static_cast<size_t>(a)];
      }
    }
    double residual = 0.0;
    for (int64_t s = 0; s < states; ++s) {
      residual = std::max(residual, std::abs(next[static_cast<size_t>(s)] - pi[static_cast<size_t>(s)]));
    }
    pi.swap(next);
    if (residual <= kResidualTol) {
      law.pi = std::move(pi);
      law.iterations = it;
      law.residual = residual;
      return law;
    }
  }
  throw no_convergence("stationary law did not converge within 1e6 iterations");
}

}  // namespace vlmc
