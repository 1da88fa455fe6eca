#include "doctest.h"

#include "support/oracles.hpp"

#include "vlmc/context_tree.hpp"
#include "vlmc/oracle.hpp"

using namespace vlmc;
namespace ts = testsupport;

namespace {
ContextTree binary_tree(std::vector<Word> words) {
  return ContextTree(Alphabet("01"), std::move(words));
}
}  // namespace

TEST_CASE("suffix property validation") {
  CHECK(validate_tree(binary_tree({"1", "10", "100", "000"})).valid());
  CHECK(validate_tree(binary_tree({"0", "1"})).valid());

  ValidationReport bad = validate_tree(binary_tree({"1", "11"}));
  REQUIRE(bad.suffix_violations.size() == 1);
  CHECK(bad.suffix_violations[0].find("\"1\" is a suffix of \"11\"") != std::string::npos);
}

TEST_CASE("duplicates collapse on construction") {
  ContextTree tree = binary_tree({"1", "01", "1"});
  CHECK(tree.size() == 2);
  // After the collapse "1" is still a trailing segment of "01".
  CHECK(validate_tree(tree).suffix_violations.size() == 1);
}

TEST_CASE("irreducibility: a lone deep context can be shortened") {
  ValidationReport r = validate_tree(binary_tree({"00"}));
  REQUIRE(r.irreducibility_violations.size() == 1);
  CHECK(r.irreducibility_violations[0].find("replaceable by its suffix \"0\"") != std::string::npos);

  // Siblings block every replacement: swapping either word for "0" would
  // leave "0" as a suffix of the other.
  CHECK(validate_tree(binary_tree({"00", "10"})).irreducibility_violations.empty());

  // Complete trees are irreducible.
  CHECK(validate_tree(binary_tree({"00", "10", "01", "11"})).valid());
}

TEST_CASE("construction rejects bad words") {
  CHECK_THROWS_AS(binary_tree({"1", "12"}), invalid_input);
  CHECK_THROWS_AS(binary_tree({""}), invalid_input);
  CHECK_THROWS_AS(Alphabet("0"), invalid_input);
  CHECK_THROWS_AS(Alphabet("00"), invalid_input);
}

TEST_CASE("truncation matches the defining equation") {
  ContextTree t1 = binary_tree({"1", "10", "100", "000"});
  CHECK(truncate(t1, 2).contexts() == std::vector<Word>{"1", "10", "00"});
  CHECK(truncate(t1, 3) == t1);
  CHECK(truncate(t1, 7) == t1);

  SUBCASE("comb truncation agrees with the enumeration oracle") {
    CombSpec comb = ts::u1();
    for (int K = 1; K <= 6; ++K) {
      // Deep teeth beyond K all collapse; 12 of them stand in for the tail.
      std::vector<Word> teeth;
      for (int j = 0; j <= 12; ++j) teeth.push_back("1" + Word(static_cast<size_t>(j), '0'));
      std::vector<Word> expected = ts::truncation_oracle(Alphabet("01"), teeth, K);
      CHECK(comb.truncated_tree(K).contexts() == expected);
    }
    CHECK(comb.truncated_tree(3).contexts() == std::vector<Word>{"1", "10", "000", "100"});
  }

  SUBCASE("oracle agreement on random trees") {
    SplitMix64 rng(0x7A1CE5u);
    for (int i = 0; i < 60; ++i) {
      ProbabilisticContextTree pct =
          ts::random_complete_tree(rng, 2 + static_cast<int>(rng.next() % 2), 5);
      for (int K = 1; K <= 5; ++K) {
        ContextTree got = truncate(pct.tree(), K);
        CHECK(got.contexts() == ts::truncation_oracle(pct.alphabet(), pct.tree().contexts(), K));
        CHECK(truncate(got, K) == got);  // idempotence
        CHECK(validate_tree(got).suffix_violations.empty());
        CHECK(validate_tree(got).irreducibility_violations.empty());
      }
    }
  }

  CHECK_THROWS_AS(truncate(t1, 0), precondition_violation);
}

TEST_CASE("context lookup on finite trees") {
  ProbabilisticContextTree t0 = ts::t0();
  ContextLookup lk = t0.context_of("01");
  REQUIRE(lk.resolved);
  CHECK(lk.context == "1");
  CHECK(lk.row == Row{0.3, 0.7});

  ProbabilisticContextTree t1 = ts::t1();
  CHECK(t1.context_of("10").context == "10");
  CHECK_FALSE(t1.context_of("0").resolved);
  CHECK(t1.context_of("1110").context == "10");
  CHECK_THROWS_AS(t1.context_of("02"), invalid_input);

  SUBCASE("memoryless model resolves to lambda") {
    ProbabilisticContextTree mm = ts::make_pct(Alphabet("01"), {{"", {0.25, 0.75}}});
    ContextLookup mlk = mm.context_of("0110");
    REQUIRE(mlk.resolved);
    CHECK(mlk.context.empty());
    CHECK(mlk.row == Row{0.25, 0.75});
  }
}

TEST_CASE("context lookup on the comb") {
  CombSpec comb = ts::u1();
  CHECK_FALSE(comb.lookup("0000").resolved);
  ContextLookup lk = comb.lookup("10100");
  REQUIRE(lk.resolved);
  CHECK(lk.context == "100");
  CHECK(lk.row[1] == doctest::Approx(0.3 + 0.3 * 0.25).epsilon(1e-15));
  CHECK(comb.lookup("11").context == "1");
}

TEST_CASE("lookup properties on random complete trees") {
  SplitMix64 rng(0xBADA55u);
  for (int i = 0; i < 40; ++i) {
    ProbabilisticContextTree pct = ts::random_complete_tree(rng, 2, 5);
    const int h = pct.height();
    for (int rep = 0; rep < 25; ++rep) {
      int len = h + static_cast<int>(rng.next() % 3);
      Word past;
      for (int j = 0; j < len; ++j) past.push_back(rng.uniform01() < 0.5 ? '0' : '1');
      ContextLookup lk = pct.context_of(past);
      REQUIRE(lk.resolved);  // pasts of length >= h always resolve
      // Consistency: prepending older symbols never changes the answer.
      ContextLookup extended = pct.context_of("0110" + past);
      CHECK(extended.context == lk.context);
    }
  }
}
