#include "vlmc/oracle.hpp"

#include <cmath>

namespace vlmc {

namespace {
const Alphabet& binary_alphabet() {
  static const Alphabet a("01");
  return a;
}
}  // namespace

CombSpec::CombSpec(double q0_, double qinf_, double gamma_) : q0(q0_), qinf(qinf_), gamma(gamma_) {
  validate();
}

void CombSpec::validate() const {
  auto in_open_unit = [](double x) { return x > 0.0 && x < 1.0 && std::isfinite(x); };
  if (!in_open_unit(q0) || !in_open_unit(qinf)) {
    throw invalid_input("comb parameters q0 and qinf must lie in (0,1)");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw invalid_input("comb parameter gamma must lie in (0,1)");
  }
}

const Alphabet& CombSpec::alphabet() const { return binary_alphabet(); }

double CombSpec::q(int64_t j) const {
  return qinf + (q0 - qinf) * std::pow(gamma, static_cast<double>(j));
}

int64_t CombSpec::age_of(const Word& past) {
  int64_t zeros = 0;
  for (auto it = past.rbegin(); it != past.rend(); ++it) {
    if (*it == '1') return zeros;
    ++zeros;
  }
  return -1;
}

ContextLookup CombSpec::lookup(const Word& past) const {
  alphabet().check_word(past);
  int64_t j = age_of(past);
  if (j < 0) return ContextLookup::need_more_past();
  Word context = "1" + Word(static_cast<size_t>(j), '0');
  return ContextLookup{true, std::move(context), row(j)};
}

ContextTree CombSpec::truncated_tree(int K) const {
  if (K < 1) throw precondition_violation("truncation level must be >= 1");
  std::vector<Word> contexts;
  for (int j = 0; j < K; ++j) {
    contexts.push_back("1" + Word(static_cast<size_t>(j), '0'));
  }
  contexts.push_back(Word(static_cast<size_t>(K), '0'));
  return ContextTree(binary_alphabet(), std::move(contexts));
}

int CombSpec::fold_depth(double tol) const {
  double gap = std::abs(q0 - qinf);
  if (gap < tol) return 0;
  int L = 0;
  while (gap * std::pow(gamma, L) >= tol && L < 4096) ++L;
  return L;
}

}  // namespace vlmc
