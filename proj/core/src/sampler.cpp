#include "vlmc/sampler.hpp"

#include <sstream>

namespace vlmc {

std::string SamplePath::to_string() const {
  std::string out;
  out.reserve(symbols.size());
  for (uint8_t s : symbols) out.push_back(alphabet.at(s));
  return out;
}

std::string SamplePath::provenance() const {
  std::ostringstream os;
  os << "model=" << model_id << ";n=" << symbols.size() << ";seed=" << seed
     << ";burn_in=" << burn_in << ";rng=splitmix64";
  return os.str();
}

namespace {

// Inverse-CDF draw in alphabet order over a cumulative slice.
int draw(const double* cum, int size, double u) {
  for (int i = 0; i < size - 1; ++i) {
    if (u < cum[i]) return i;
  }
  return size - 1;
}

}  // namespace

PathSampler::PathSampler(const Model& model, int64_t burn_in)
    : model_(model), burn_in_(burn_in), model_id_(model.describe()) {
  const int A = model_.alphabet().size();
  if (model_.is_finite()) {
    burn_in_ = 0;
    const ProbabilisticContextTree& pct = model_.pct();
    StationaryLaw law = stationary_law(pct);
    height_ = law.height;
    states_ = static_cast<int64_t>(law.pi.size());

    std::vector<Row> rows = state_rows(pct);
    state_cum_.resize(static_cast<size_t>(states_) * static_cast<size_t>(A));
    for (int64_t s = 0; s < states_; ++s) {
      double acc = 0.0;
      for (int a = 0; a < A; ++a) {
        acc += rows[static_cast<size_t>(s)][static_cast<size_t>(a)];
        state_cum_[static_cast<size_t>(s * A + a)] = acc;
      }
    }
    pi_cum_.resize(law.pi.size());
    double acc = 0.0;
    for (size_t s = 0; s < law.pi.size(); ++s) {
      acc += law.pi[s];
      pi_cum_[s] = acc;
    }
  } else {
    if (burn_in_ < 10000) {
      throw precondition_violation("oracle models need a burn-in of at least 10^4");
    }
    const CombSpec& comb = model_.comb();
    comb.validate();
    int fold = comb.fold_depth();
    comb_q_.resize(static_cast<size_t>(fold) + 1);
    for (int j = 0; j <= fold; ++j) comb_q_[static_cast<size_t>(j)] = comb.q(j);
  }
}

SamplePath PathSampler::sample(int64_t n, uint64_t seed) const {
  if (n < 1) throw invalid_input("sample length must be >= 1");
  const int A = model_.alphabet().size();
  SamplePath path;
  path.alphabet = model_.alphabet();
  path.model_id = model_id_;
  path.seed = seed;
  path.burn_in = burn_in_;
  path.symbols.reserve(static_cast<size_t>(n));
  SplitMix64 rng(seed);

  if (model_.is_finite()) {
    // Stationary start: the first h symbols form a pi-distributed word.
    int64_t state = 0;
    if (height_ > 0) {
      state = draw(pi_cum_.data(), static_cast<int>(states_), rng.uniform01());
      int64_t x = state;
      std::vector<uint8_t> initial(static_cast<size_t>(height_));
      for (int i = height_ - 1; i >= 0; --i) {
        initial[static_cast<size_t>(i)] = static_cast<uint8_t>(x % A);
        x /= A;
      }
      for (int i = 0; i < height_ && static_cast<int64_t>(path.symbols.size()) < n; ++i) {
        path.symbols.push_back(initial[static_cast<size_t>(i)]);
      }
    }
    const int64_t block = states_ / A;
    while (static_cast<int64_t>(path.symbols.size()) < n) {
      int a = draw(state_cum_.data() + state * A, A, rng.uniform01());
      path.symbols.push_back(static_cast<uint8_t>(a));
      state = (state % block) * A + a;
    }
    return path;
  }

  // Oracle model: seed past is a single 1, then burn_in discarded symbols.
  // The comb's context is determined by the count of zeros since the last 1.
  int64_t age = 0;
  auto q_of = [&](int64_t j) {
    return comb_q_[static_cast<size_t>(std::min<int64_t>(j, static_cast<int64_t>(comb_q_.size()) - 1))];
  };
  for (int64_t t = 0; t < burn_in_ + n; ++t) {
    // Inverse CDF in alphabet order over the row (1-q, q).
    bool one = !(rng.uniform01() < 1.0 - q_of(age));
    age = one ? 0 : age + 1;
    if (t >= burn_in_) path.symbols.push_back(one ? 1 : 0);
  }
  return path;
}

SamplePath sample_path(const Model& model, int64_t n, uint64_t seed, int64_t burn_in) {
  return PathSampler(model, burn_in).sample(n, seed);
}

}  // namespace vlmc
