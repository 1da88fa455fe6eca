#include <map>

#include "doctest.h"

#include "support/oracles.hpp"

#include "vlmc/sampler.hpp"

using namespace vlmc;
namespace ts = testsupport;

namespace {

// Plain-scan frequency of w among the length-(l(w)) windows.
double window_freq(const SamplePath& path, const Word& w) {
  std::string text = path.to_string();
  long long c = ts::naive_count(text, w);
  return static_cast<double>(c) / static_cast<double>(text.size() - w.size() + 1);
}

}  // namespace

TEST_CASE("degenerate rows give a constant path") {
  auto stuck = ts::make_pct(Alphabet("01"), {{"0", {0.0, 1.0}}, {"1", {0.0, 1.0}}});
  SamplePath path = sample_path(Model(stuck), 500, 7);
  for (uint8_t s : path.symbols) CHECK(s == 1);
}

TEST_CASE("paths are deterministic in (model, n, seed, burn_in)") {
  Model t1{ts::t1()};
  SamplePath a = sample_path(t1, 4096, 42);
  SamplePath b = sample_path(t1, 4096, 42);
  CHECK(a.symbols == b.symbols);
  SamplePath c = sample_path(t1, 4096, 43);
  CHECK(a.symbols != c.symbols);
  CHECK(a.burn_in == 0);  // finite models start exactly stationary

  Model comb{ts::u1()};
  SamplePath d = sample_path(comb, 2048, 42, 10000);
  SamplePath e = sample_path(comb, 2048, 42, 10000);
  CHECK(d.symbols == e.symbols);
  CHECK(d.burn_in == 10000);
}

TEST_CASE("oracle burn-in precondition") {
  CHECK_THROWS_AS(sample_path(Model(ts::u1()), 100, 1, 9999), precondition_violation);
  CHECK_NOTHROW(sample_path(Model(ts::u1()), 100, 1, 10000));
  CHECK_THROWS_AS(sample_path(Model(ts::t0()), 0, 1), invalid_input);
}

TEST_CASE("paths shorter than the tree height") {
  SamplePath path = sample_path(Model(ts::t1()), 2, 9);
  CHECK(path.size() == 2);
}

TEST_CASE("T0 stationary frequency of 1") {
  SamplePath path = sample_path(Model(ts::t0()), 1000000, 1);
  int64_t ones = 0;
  for (uint8_t s : path.symbols) ones += s;
  double freq = static_cast<double>(ones) / static_cast<double>(path.size());
  CHECK(freq == doctest::Approx(0.4).epsilon(0.0125));  // 0.4 +- 0.005
  CHECK(std::abs(freq - 0.4) < 0.005);
}

TEST_CASE("window frequencies approach cylinder probabilities") {
  // All words of length <= 3, 20 seeds, gap below 0.01 at n = 10^6.
  for (const ProbabilisticContextTree& pct : {ts::t0(), ts::t1()}) {
    Model model{pct};
    Analyzer analyzer(model);
    PathSampler sampler(model, 0);
    int good_seeds = 0;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      SamplePath path = sampler.sample(1000000, seed);
      bool ok = true;
      std::vector<Word> level{""};
      for (int len = 1; len <= 3; ++len) {
        std::vector<Word> next;
        for (const Word& w : level) {
          for (char a : {'0', '1'}) next.push_back(w + a);
        }
        level = std::move(next);
        for (const Word& w : level) {
          if (std::abs(window_freq(path, w) - analyzer.word_probability(w)) >= 0.01) ok = false;
        }
      }
      good_seeds += ok ? 1 : 0;
    }
    CHECK(good_seeds >= 19);
  }
}

TEST_CASE("burn-in sufficiency for the comb") {
  Model comb{ts::u1()};
  SamplePath a = sample_path(comb, 1000000, 5, 10000);
  SamplePath b = sample_path(comb, 1000000, 5, 100000);
  std::vector<Word> level{""};
  for (int len = 1; len <= 3; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (char c : {'0', '1'}) next.push_back(w + c);
    }
    level = std::move(next);
    for (const Word& w : level) {
      CHECK(std::abs(window_freq(a, w) - window_freq(b, w)) < 0.005);
    }
  }
}

TEST_CASE("provenance is recorded") {
  SamplePath path = sample_path(Model(ts::u1()), 64, 11, 10000);
  CHECK(path.provenance().find("seed=11") != std::string::npos);
  CHECK(path.provenance().find("burn_in=10000") != std::string::npos);
  CHECK(path.provenance().find("rng=splitmix64") != std::string::npos);
  CHECK(path.model_id.find("comb") != std::string::npos);
}
