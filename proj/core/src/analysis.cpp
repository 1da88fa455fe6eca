#include "vlmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vlmc {

namespace {
constexpr double kEulerE = 2.718281828459045235360287471353;
constexpr double kDivergenceTol = 1e-9;
constexpr int64_t kEnumerationCap = 1 << 22;
const double kExpInvE = std::exp(1.0 / kEulerE);

// Saturates well above every enumeration guard instead of overflowing.
int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (int64_t{1} << 40)) return int64_t{1} << 40;
    r *= base;
  }
  return r;
}
}  // namespace

RhoSequence rho_sequence(const std::vector<double>& alphas, int m_max) {
  if (m_max < 0) throw invalid_input("m_max must be >= 0");
  if (static_cast<int>(alphas.size()) < m_max) {
    throw invalid_input("need alpha_0..alpha_{m_max-1} to drive the chain");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw precondition_violation("alpha coefficients must lie in (0,1]");
  }
  RhoSequence out;
  out.values.assign(static_cast<size_t>(m_max) + 1, 0.0);
  out.values[0] = 1.0;

  // Forward dynamic programming of the occupation law over states 0..m.
  std::vector<double> dist(static_cast<size_t>(m_max) + 1, 0.0);
  std::vector<double> next(dist.size(), 0.0);
  dist[0] = 1.0;
  for (int step = 1; step <= m_max; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int x = 0; x < step; ++x) {
      double mass = dist[static_cast<size_t>(x)];
      if (mass == 0.0) continue;
      double a = alphas[static_cast<size_t>(x)];
      next[static_cast<size_t>(x) + 1] += mass * a;
      next[0] += mass * (1.0 - a);
    }
    dist.swap(next);
    out.values[static_cast<size_t>(step)] = dist[0];
  }
  for (double r : out.values) out.partial_sum += r;
  return out;
}

Analyzer::Analyzer(Model model) : model_(std::move(model)) {
  if (model_.is_finite()) {
    const ProbabilisticContextTree& pct = model_.pct();
    try {
      law_ = stationary_law(pct);
    } catch (const error& e) {
      law_error_ = e.what();
    }
    // Coverage: every past of the tree's own height must resolve.
    const int h = pct.height();
    const int A = pct.alphabet().size();
    int64_t states = 1;
    for (int i = 0; i < h; ++i) {
      states *= A;
      if (states > kEnumerationCap) return;  // alpha_sequence guards separately
    }
    std::vector<uint8_t> word(static_cast<size_t>(h));
    for (int64_t u = 0; u < states && covering_; ++u) {
      int64_t x = u;
      for (int i = h - 1; i >= 0; --i) {
        word[static_cast<size_t>(i)] = static_cast<uint8_t>(x % A);
        x /= A;
      }
      covering_ = pct.context_of_encoded(word.data(), word.size()).resolved;
    }
  } else {
    const CombSpec& comb = model_.comb();
    comb.validate();
    AgeChain chain;
    chain.fold = comb.fold_depth();
    chain.q.resize(static_cast<size_t>(chain.fold) + 1);
    for (int j = 0; j <= chain.fold; ++j) chain.q[static_cast<size_t>(j)] = comb.q(j);
    // Stationary age distribution: pi(j+1) = pi(j)(1-q_j), the folded state
    // absorbs the geometric tail.
    std::vector<double>& pi = chain.pi;
    pi.assign(chain.q.size(), 0.0);
    pi[0] = 1.0;
    for (int j = 0; j + 1 <= chain.fold; ++j) {
      pi[static_cast<size_t>(j) + 1] = pi[static_cast<size_t>(j)] * (1.0 - chain.q[static_cast<size_t>(j)]);
    }
    pi[static_cast<size_t>(chain.fold)] /= chain.q[static_cast<size_t>(chain.fold)];
    double z = 0.0;
    for (double p : pi) z += p;
    for (double& p : pi) p /= z;
    chain_ = std::move(chain);
  }
}

const StationaryLaw& Analyzer::stationary() const {
  if (!model_.is_finite()) throw invalid_input("stationary law is defined for finite models only");
  if (!law_) throw invalid_input(law_error_);
  return *law_;
}

double Analyzer::finite_word_probability(const std::vector<uint8_t>& w) const {
  const StationaryLaw& law = stationary();
  const int h = law.height;
  if (static_cast<int>(w.size()) <= h) return law.word_probability(w);
  // Chain rule beyond the embedding depth: pasts of length >= h resolve.
  std::vector<uint8_t> prefix(w.begin(), w.begin() + h);
  double p = law.word_probability(prefix);
  const ProbabilisticContextTree& pct = model_.pct();
  for (size_t j = static_cast<size_t>(h); j < w.size() && p > 0.0; ++j) {
    ContextLookup lk = pct.context_of_encoded(w.data(), j);
    if (!lk.resolved) throw invalid_input("tree does not determine all pasts of its own height");
    p *= lk.row[w[j]];
  }
  return p;
}

std::vector<double> Analyzer::comb_distribution_after(const std::vector<uint8_t>& w) const {
  const AgeChain& chain = *chain_;
  const size_t m = chain.q.size();
  std::vector<double> dist = chain.pi;
  std::vector<double> next(m, 0.0);
  for (uint8_t sym : w) {
    std::fill(next.begin(), next.end(), 0.0);
    if (sym == 1) {
      double mass = 0.0;
      for (size_t j = 0; j < m; ++j) mass += dist[j] * chain.q[j];
      next[0] = mass;
    } else {
      for (size_t j = 0; j < m; ++j) {
        size_t to = std::min(j + 1, m - 1);
        next[to] += dist[j] * (1.0 - chain.q[j]);
      }
    }
    dist.swap(next);
  }
  return dist;
}

double Analyzer::word_probability(const Word& w) const {
  alphabet().check_word(w);
  std::vector<uint8_t> enc = alphabet().encode(w);
  if (model_.is_finite()) return finite_word_probability(enc);
  std::vector<double> dist = comb_distribution_after(enc);
  double p = 0.0;
  for (double x : dist) p += x;
  return p;
}

Row Analyzer::conditional_row(const Word& v) const {
  if (model_.is_finite()) {
    double pv = word_probability(v);
    if (pv <= 0.0) throw undefined_conditional("conditional on a zero-probability word");
    ContextLookup lk = model_.context_of(v);
    if (lk.resolved) return lk.row;
    Row row(static_cast<size_t>(alphabet().size()));
    for (int a = 0; a < alphabet().size(); ++a) {
      Word va = v + alphabet().at(a);
      row[static_cast<size_t>(a)] = word_probability(va) / pv;
    }
    return row;
  }
  ContextLookup lk = model_.context_of(v);
  if (lk.resolved) return lk.row;
  std::vector<uint8_t> enc = alphabet().encode(v);
  std::vector<double> dist = comb_distribution_after(enc);
  double pv = 0.0, p1 = 0.0;
  const AgeChain& chain = *chain_;
  for (size_t j = 0; j < dist.size(); ++j) {
    pv += dist[j];
    p1 += dist[j] * chain.q[j];
  }
  if (pv <= 0.0) throw undefined_conditional("conditional on a zero-probability word");
  return Row{1.0 - p1 / pv, p1 / pv};
}

double Analyzer::conditional_probability(char a, const Word& v) const {
  int ai = alphabet().index_of(a);
  if (ai < 0) throw invalid_input("symbol is not in the alphabet");
  return conditional_row(v)[static_cast<size_t>(ai)];
}

double Analyzer::finite_alpha_k(int k) const {
  const ProbabilisticContextTree& pct = model_.pct();
  const int A = pct.alphabet().size();
  const int h = pct.height();
  if (pct.memoryless()) return 1.0;
  if (k > h) return covering_ ? 1.0 : 0.0;

  // Bucket contexts by their trailing k symbols.
  const int64_t count = ipow(A, k);
  std::vector<uint8_t> word(static_cast<size_t>(k));
  double alpha_k = 1.0;
  for (int64_t u = 0; u < count; ++u) {
    int64_t x = u;
    for (int i = k - 1; i >= 0; --i) {
      word[static_cast<size_t>(i)] = static_cast<uint8_t>(x % A);
      x /= A;
    }
    if (pct.context_of_encoded(word.data(), word.size()).resolved) {
      continue;  // fully determined past, contributes 1
    }
    Word u_word = pct.alphabet().decode(word);
    Row mins(static_cast<size_t>(A), std::numeric_limits<double>::infinity());
    bool any = false;
    for (int ci = 0; ci < pct.tree().size(); ++ci) {
      const Word& w = pct.tree().contexts()[static_cast<size_t>(ci)];
      if (is_proper_suffix(u_word, w)) {
        any = true;
        const Row& r = pct.row_for(ci);
        for (int a = 0; a < A; ++a) {
          mins[static_cast<size_t>(a)] = std::min(mins[static_cast<size_t>(a)], r[static_cast<size_t>(a)]);
        }
      }
    }
    double val = 0.0;
    if (any) {
      for (double m : mins) val += m;
    }
    // No context determines or extends u: the tree leaves this past
    // undetermined and certifies no loss of memory at level k.
    alpha_k = std::min(alpha_k, val);
  }
  return alpha_k;
}

AlphaSequence Analyzer::alpha_sequence(int k_max) const {
  if (k_max < 0) throw invalid_input("k_max must be >= 0");
  AlphaSequence out;
  out.values.reserve(static_cast<size_t>(k_max) + 1);
  if (model_.is_finite()) {
    const ProbabilisticContextTree& pct = model_.pct();
    const int h = pct.height();
    if (k_max < h) throw precondition_violation("k_max must reach the tree height");
    if (ipow(pct.alphabet().size(), h) > kEnumerationCap) {
      throw enumeration_too_large("alpha enumeration exceeds the guard");
    }
    if (!covering_) {
      throw summability_violation(
          "tree leaves some pasts undetermined; the loss-of-memory tail is not summable");
    }
    double alpha0 = 0.0;
    for (int a = 0; a < pct.alphabet().size(); ++a) {
      double m = std::numeric_limits<double>::infinity();
      for (const Row& r : pct.rows()) m = std::min(m, r[static_cast<size_t>(a)]);
      alpha0 += m;
    }
    out.values.push_back(alpha0);
    out.sum = 1.0 - alpha0;
    for (int k = 1; k <= k_max; ++k) {
      double ak = finite_alpha_k(k);
      out.values.push_back(ak);
      if (k <= h) out.sum += 1.0 - ak;
    }
  } else {
    const CombSpec& comb = model_.comb();
    double gap = std::abs(comb.q0 - comb.qinf);
    for (int k = 0; k <= k_max; ++k) {
      out.values.push_back(1.0 - gap * std::pow(comb.gamma, k));
    }
    out.sum = gap / (1.0 - comb.gamma);
    if (!std::isfinite(out.sum)) {
      throw summability_violation("comb tail sum is not finite");
    }
  }
  return out;
}

std::vector<double> Analyzer::alphas_upto(int m) const {
  if (model_.is_finite()) {
    int h = model_.pct().height();
    AlphaSequence seq = alpha_sequence(std::max(m, h));
    seq.values.resize(static_cast<size_t>(m) + 1);
    return seq.values;
  }
  return alpha_sequence(m).values;
}

double Analyzer::alpha_zero() const {
  int h = model_.is_finite() ? model_.pct().height() : 0;
  return alpha_sequence(h).values[0];
}

double Analyzer::alpha_total() const {
  int h = model_.is_finite() ? model_.pct().height() : 0;
  return alpha_sequence(h).sum;
}

double Analyzer::constant_C() const {
  double a0 = alpha_zero();
  double a = alpha_total();
  return a0 / (8.0 * kEulerE * (a + a0));
}

DivergenceSet Analyzer::divergence_set(int k) const {
  if (k < 1) throw invalid_input("k must be >= 1");
  DivergenceSet out;
  out.min_gap = std::numeric_limits<double>::infinity();
  ContextTree trunc = true_tree_truncated(k);
  for (const Word& u : trunc.contexts()) {
    Row ru = conditional_row(u);
    Row rs = conditional_row(suf(u));
    double gap = 0.0;
    for (size_t a = 0; a < ru.size(); ++a) gap = std::max(gap, std::abs(ru[a] - rs[a]));
    if (gap > kDivergenceTol) {
      out.words.push_back(u);
      out.min_gap = std::min(out.min_gap, gap);
    }
  }
  return out;
}

void Analyzer::epsilon_scan(std::vector<uint8_t>& word, double prob, std::vector<double>& dist,
                            int k, double& best) const {
  if (prob > 0.0 && !word.empty()) best = std::min(best, prob);
  if (static_cast<int>(word.size()) == k || prob <= 0.0) return;
  const int A = alphabet().size();
  if (model_.is_finite()) {
    const int h = model_.pct().height();
    for (int a = 0; a < A; ++a) {
      word.push_back(static_cast<uint8_t>(a));
      double p;
      if (static_cast<int>(word.size()) <= h) {
        p = stationary().word_probability(word);
      } else {
        ContextLookup lk = model_.pct().context_of_encoded(word.data(), word.size() - 1);
        if (!lk.resolved) throw invalid_input("tree does not determine all pasts of its own height");
        p = prob * lk.row[static_cast<size_t>(a)];
      }
      epsilon_scan(word, p, dist, k, best);
      word.pop_back();
    }
  } else {
    const AgeChain& chain = *chain_;
    const size_t m = chain.q.size();
    // dist[j] = P(age = j and the current word was emitted).
    std::vector<double> saved = dist;
    for (int a = 0; a < A; ++a) {
      word.push_back(static_cast<uint8_t>(a));
      std::vector<double> next(m, 0.0);
      double p = 0.0;
      if (a == 1) {
        for (size_t j = 0; j < m; ++j) p += saved[j] * chain.q[j];
        next[0] = p;
      } else {
        for (size_t j = 0; j < m; ++j) {
          size_t to = std::min(j + 1, m - 1);
          next[to] += saved[j] * (1.0 - chain.q[j]);
        }
        for (double x : next) p += x;
      }
      dist = next;
      epsilon_scan(word, p, dist, k, best);
      word.pop_back();
    }
    dist = saved;
  }
}

double Analyzer::epsilon(int k) const {
  if (k < 0) throw invalid_input("k must be >= 0");
  if (ipow(alphabet().size(), k) > kEnumerationCap) {
    throw enumeration_too_large("epsilon enumeration exceeds the guard");
  }
  double best = 1.0;  // the empty word has probability 1
  std::vector<uint8_t> word;
  std::vector<double> dist;
  if (!model_.is_finite()) dist = chain_->pi;
  epsilon_scan(word, 1.0, dist, k, best);
  return best;
}

int Analyzer::minimal_depth(int K) const {
  if (K < 1) throw invalid_input("K must be >= 1");
  // Candidate non-contexts: the empty word plus every proper suffix of a
  // truncated-tree element that is not itself a context.
  std::vector<Word> candidates{Word{}};
  ContextTree trunc = true_tree_truncated(K);
  for (const Word& w : trunc.contexts()) {
    for (size_t cut = 1; cut < w.size(); ++cut) {
      Word s = w.substr(cut);
      bool is_context = model_.is_finite()
                            ? model_.pct().tree().contains(s)
                            : (s.find('1') != Word::npos);
      if (!is_context) candidates.push_back(s);
    }
  }
  std::sort(candidates.begin(), candidates.end(), word_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  int overall = 0;
  std::vector<DivergenceSet> cache;
  auto divergence_at = [&](int k) -> const DivergenceSet& {
    while (static_cast<int>(cache.size()) < k) {
      cache.push_back(divergence_set(static_cast<int>(cache.size()) + 1));
    }
    return cache[static_cast<size_t>(k) - 1];
  };

  const int hard_cap = model_.is_finite() ? model_.pct().height() : K + 32;
  for (const Word& u : candidates) {
    int found = 0;
    for (int k = static_cast<int>(u.size()) + 1; k <= hard_cap; ++k) {
      const DivergenceSet& div = divergence_at(k);
      bool hit = false;
      for (const Word& w : div.words) {
        if (is_proper_suffix(u, w)) {
          hit = true;
          break;
        }
      }
      if (hit) {
        found = k;
        break;
      }
    }
    overall = std::max(overall, found);  // empty witness set contributes 0
  }
  return overall + 1;
}

double Analyzer::bound_count_deviation(const Word& w, char a, double t, int64_t n) const {
  alphabet().check_word(w);
  if (alphabet().index_of(a) < 0) throw invalid_input("symbol is not in the alphabet");
  if (!(t > 0.0)) throw precondition_violation("t must be positive");
  const auto lw = static_cast<double>(w.size());
  if (static_cast<double>(n) <= lw) throw precondition_violation("n must exceed the word length");
  double C = constant_C();
  double exponent = -(t * t * C) / ((static_cast<double>(n) - lw) * (lw + 1.0));
  return kExpInvE * std::exp(exponent);
}

double Analyzer::bound_phat_deviation(const Word& w, char a, double t, int64_t n) const {
  alphabet().check_word(w);
  if (alphabet().index_of(a) < 0) throw invalid_input("symbol is not in the alphabet");
  if (!(t > 0.0)) throw precondition_violation("t must be positive");
  double pw = word_probability(w);
  if (!(pw > 0.0)) throw precondition_violation("word must have positive probability");
  const double A = alphabet().size();
  const double lw = static_cast<double>(w.size());
  if (static_cast<double>(n) <= (A + 1.0) / (t * pw) + lw) {
    throw precondition_violation("n is below the validity threshold of the p-hat bound");
  }
  double C = constant_C();
  double m = static_cast<double>(n) - lw;
  double shifted = t - (A + 1.0) / (m * pw);
  double exponent = -m * (shifted * shifted * pw * pw * C) / (4.0 * A * A * (lw + 1.0));
  return 2.0 * A * kExpInvE * std::exp(exponent);
}

double Analyzer::bound_recovery(int K, int d, double delta, int64_t n) const {
  if (K < 1) throw invalid_input("K must be >= 1");
  int d_min = minimal_depth(K);
  if (d < d_min) {
    throw precondition_violation("depth d is below the minimal admissible depth " +
                                 std::to_string(d_min));
  }
  DivergenceSet div = divergence_set(d);
  double Dd = div.min_gap;
  if (!(delta > 0.0) || delta >= Dd) {
    throw precondition_violation("delta must lie in (0, D_d)");
  }
  double eps = epsilon(d);
  const double A = alphabet().size();
  double margin = std::min(delta, Dd - delta);
  if (static_cast<double>(n) <= 2.0 * (A + 1.0) / (margin * eps) + d) {
    throw precondition_violation("n is below the validity threshold of the recovery bound");
  }
  double C = constant_C();
  double m = static_cast<double>(n) - d;
  double shifted = margin / 2.0 - (A + 1.0) / (m * eps);
  double exponent = -m * (shifted * shifted * eps * eps * C) / (4.0 * A * A * (d + 1.0));
  return 4.0 * kExpInvE * std::pow(A, d + 2) * std::exp(exponent);
}

ContextTree Analyzer::true_tree_truncated(int K) const {
  if (model_.is_finite()) return truncate(model_.pct().tree(), K);
  return model_.comb().truncated_tree(K);
}

BoundReport Analyzer::report(int k_max, int K, int l_max,
                             const std::optional<RecoveryBoundQuery>& query) const {
  BoundReport rep;
  AlphaSequence alpha = alpha_sequence(
      model_.is_finite() ? std::max(k_max, model_.pct().height()) : k_max);
  rep.alpha_seq.assign(alpha.values.begin(),
                       alpha.values.begin() + std::min<size_t>(alpha.values.size(),
                                                               static_cast<size_t>(k_max) + 1));
  rep.alpha_sum = alpha.sum;
  rep.C = constant_C();
  for (int k = 1; k <= k_max; ++k) rep.D.push_back(divergence_set(k).min_gap);
  for (int k = 0; k <= k_max; ++k) rep.epsilon.push_back(epsilon(k));
  RhoSequence rho = rho_sequence(alphas_upto(l_max), l_max);
  rep.rho_seq = rho.values;
  rep.rho_sum = rho.partial_sum;
  rep.K = K;
  rep.d_min = minimal_depth(K);
  if (query) {
    rep.query = query;
    try {
      rep.recovery_bound = bound_recovery(K, query->d, query->delta, query->n);
    } catch (const precondition_violation& e) {
      rep.recovery_violation = e.what();
      rep.recovery_bound = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rep;
}

}  // namespace vlmc
