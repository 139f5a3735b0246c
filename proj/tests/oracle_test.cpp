#include <gtest/gtest.h>

#include "genlimit/error.hpp"
#include "genlimit/oracle.hpp"
#include "test_data.hpp"

using namespace genlimit;
using namespace genlimit::oracle;

TEST(OracleMstar, MatchesProcedure1OnCorpus) {
  for (const auto* name : {"blocks.json", "blocks_reordered.json", "single.json", "duplicate.json",
                           "two_noisy.json", "two_repr.json"}) {
    auto c = corpus(name);
    for (std::size_t n = 1; n <= std::min<std::size_t>(c.size(), 10); ++n)
      EXPECT_EQ(oracle_mstar(c, n), procedure1(c, n)) << name << " prefix " << n;
  }
  EXPECT_EQ(oracle_mstar(corpus("blocks.json"), 8).m_star_values(),
            (std::vector<std::uint64_t>{0, 100, 0, 0, 0, 0, 0, 0}));
}

class RandomEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(RandomEquivalence, Procedure1) {
  auto c = random_collection(static_cast<std::uint64_t>(GetParam()), 6);
  EXPECT_EQ(oracle_mstar(c, 6), procedure1(c, 6));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomEquivalence, ::testing::Range(0, 100));

TEST(OracleNoisy, MatchesOptimizer) {
  auto c = corpus("two_noisy.json");
  std::vector<NoisyMember> cells{{&c[0], 0, 0}, {&c[1], 1, 1}};
  EXPECT_EQ(oracle_noisy_T(cells, 1, 15), 6u);
  std::vector<NoisyMember> zero{{&c[0], 0, 0}, {&c[1], 1, 0}};
  EXPECT_EQ(oracle_noisy_T(zero, 1, 15), 5u);
  std::vector<NoisyMember> single{{&c[0], 0, 3}};
  EXPECT_EQ(oracle_noisy_T(single, 0, 15), 0u);
  // Every prefix evaluated during a traversal agrees with the window search.
  NoisySorter s(c);
  for (std::uint64_t l = 1; l <= 8; ++l) {
    s.extend_to(l);
    for (std::size_t k = 0; k < s.table().ordering.size(); ++k) {
      std::vector<NoisyMember> prefix;
      for (std::size_t q = 0; q <= k; ++q) {
        const auto& cell = s.table().entries[s.table().ordering[q]].cell;
        prefix.push_back({&c[cell.language], cell.language, cell.noise});
      }
      EXPECT_EQ(max_noisy_witness(prefix, k).m, oracle_noisy_T(prefix, k, 15));
    }
  }
}

TEST(OracleNoisy, RandomPrefixes) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto c = random_collection(seed, 3);
    std::vector<NoisyMember> cells;
    for (std::size_t i = 0; i < 3; ++i) cells.push_back({&c[i], i, static_cast<std::uint32_t>((seed + i) % 3)});
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(max_noisy_witness(cells, j).m, oracle_noisy_T(cells, j, 70)) << "seed " << seed << " j " << j;
  }
}

TEST(OracleScarce, MatchesOptimizer) {
  auto c = corpus("two_repr.json");
  auto p = ints_vs_atom(c.registry());
  auto sets = c.sets();
  for (auto a : {Rational(1, 4), Rational(1, 2), Rational(1)})
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_EQ(max_scarce_witness(std::span<const SetExpr>(sets).first(j + 1), j, p, a).m,
                oracle_scarce_T(std::vector<SetExpr>(sets.begin(), sets.begin() + static_cast<long>(j) + 1), j, p, a, 30));
}

TEST(OracleScarce, RandomPrefixes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = random_collection(seed, 3);
    auto r = c.registry();
    GroupPartition p({"neg", "nonneg"}, {SetExpr::from_parts(r, {{kNegInf, -1}}, {}),
                                         SetExpr::from_parts(r, {{0, kPosInf}}, {{0, AtomPart{}}, {1, AtomPart{}}, {2, AtomPart{}}, {3, AtomPart{}}, {4, AtomPart{}}})});
    auto sets = c.sets();
    for (auto a : {Rational(1, 3), Rational(1, 2)})
      EXPECT_EQ(max_scarce_witness(sets, 2, p, a).m, oracle_scarce_T(sets, 2, p, a, 200)) << "seed " << seed;
  }
}

TEST(Dominance, Verdicts) {
  std::vector<std::uint64_t> reordered{1, 101, 1, 1, 5, 6, 7, 8}, dflt{1, 101, 101, 101, 5, 6, 7, 8};
  EXPECT_EQ(pareto_dominance(reordered, dflt), Dominance::Dominates);
  EXPECT_EQ(pareto_dominance(dflt, reordered), Dominance::DominatedBy);
  EXPECT_EQ(pareto_dominance(dflt, dflt), Dominance::Equal);
  EXPECT_EQ(pareto_dominance({1, 5}, {5, 1}), Dominance::Incomparable);
  EXPECT_THROW(pareto_dominance({1}, {1, 2}), Error);
}

TEST(RandomCollection, DeterministicAndInfinite) {
  auto a = random_collection(7, 6), b = random_collection(7, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_FALSE(a[i].is_finite());
  }
}
