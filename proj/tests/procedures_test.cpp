#include <gtest/gtest.h>

#include "genlimit/error.hpp"
#include "genlimit/oracle.hpp"
#include "genlimit/procedures.hpp"
#include "test_data.hpp"

using namespace genlimit;

using U64s = std::vector<std::uint64_t>;

TEST(Procedure1, Blocks) {
  auto t = procedure1(corpus("blocks.json"), 8);
  EXPECT_EQ(t.m_star_values(), (U64s{0, 100, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(t.entries[1].witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(t.entries[1].witness_set.size(), 100u);
  EXPECT_EQ(t.ordering, (std::vector<std::size_t>{7, 6, 5, 4, 3, 2, 0, 1}));
}

TEST(Procedure1, SingletonAndDuplicates) {
  auto s = procedure1(corpus("single.json"), 1);
  EXPECT_EQ(s.m_star_values(), U64s{0});
  EXPECT_TRUE(s.entries[0].witness.empty());
  EXPECT_EQ(procedure1(corpus("duplicate.json"), 2).m_star_values(), (U64s{0, 0}));
  EXPECT_THROW(procedure1(corpus("single.json"), 2), Error);
}

TEST(Diagonal, IndexAndInverse) {
  EXPECT_EQ(diag_index(0, 1), 1u);
  EXPECT_EQ(diag_index(1, 1), 2u);
  EXPECT_EQ(diag_index(0, 2), 3u);
  EXPECT_EQ(diag_index(2, 1), 4u);
  EXPECT_EQ(diag_index(1, 2), 5u);
  EXPECT_EQ(diag_index(0, 3), 6u);
  for (std::uint64_t n = 0; n <= 10; ++n)
    for (std::uint64_t i = 1; i <= 10; ++i) EXPECT_EQ(diag_elem(diag_index(n, i)), std::make_pair(n, i));
}

TEST(NoisyWitness, Examples) {
  auto c = corpus("two_noisy.json");
  std::vector<NoisyMember> cells{{&c[0], 0, 0}, {&c[1], 1, 1}};
  auto ev = max_noisy_witness(cells, 1);
  EXPECT_EQ(ev.m, 6u);
  EXPECT_EQ(ev.witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(ev.witness_set.size(), 6u);

  std::vector<NoisyMember> plain{{&c[0], 0, 0}, {&c[1], 1, 0}};
  auto p = max_noisy_witness(plain, 1);
  EXPECT_EQ(p.m, 5u);
  TokenSet one_to_five;
  for (int v = 1; v <= 5; ++v) one_to_five.insert(Token::integer(v));
  EXPECT_EQ(p.witness_set, one_to_five);

  std::vector<NoisyMember> single{{&c[0], 0, 2}};
  EXPECT_EQ(max_noisy_witness(single, 0).m, 0u);
  EXPECT_TRUE(max_noisy_witness(single, 0).witness.empty());
}

TEST(Procedure2, Singleton) {
  auto t = procedure2(corpus("single.json"), 6);
  ASSERT_EQ(t.entries.size(), 3u);
  for (const auto& e : t.entries) EXPECT_EQ(e.m_star, 0u);
}

TEST(Procedure2, TwoLanguageInstance) {
  auto c = corpus("two_noisy.json");
  auto t3 = procedure2(c, 3);
  EXPECT_EQ(t3.m_star_values(), (U64s{0, 0, 6}));
  auto t5 = procedure2(c, 5);
  EXPECT_EQ(t5.m_star_values(), (U64s{0, 0, 6, 7, 8}));
  const auto& l2n1 = t5.entries[*t5.find({1, 1})];
  EXPECT_EQ(l2n1.position, 5u);
  EXPECT_EQ(l2n1.witness, (std::vector<std::size_t>{3, 4}));
  // The table grows monotonically: a longer run keeps every earlier entry.
  auto t8 = procedure2(c, 8);
  for (std::size_t e = 0; e < t5.entries.size(); ++e) EXPECT_EQ(t8.entries[e], t5.entries[e]);
}

TEST(Scarcity, ScarceGroups) {
  auto r = make_registry({"atom1"});
  GroupPartition p({"nonneg", "neg"}, {SetExpr::from_parts(r, {{0, kPosInf}}, {{0, AtomPart{}}}),
                                       SetExpr::from_parts(r, {{kNegInf, -1}}, {})});
  TokenSet first5, first2{Token::integer(1), Token::integer(2)};
  for (int v = 1; v <= 5; ++v) first5.insert(Token::integer(v));
  EXPECT_EQ(scarce_groups(SetExpr::from_parts(r, {{1, 5}}, {}), first5, p), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(scarce_groups(SetExpr::from_parts(r, {{1, kPosInf}}, {}), first2, p), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(scarce_groups(SetExpr::universe(r), {}, p).empty());
  EXPECT_THROW(GroupPartition({"a"}, {SetExpr::from_parts(r, {{0, kPosInf}}, {})}), Error);
}

TEST(Scarcity, SuffersScarcity) {
  auto r = make_registry({});
  auto half = Rational(1, 2);
  GroupPartition two({"nonneg", "neg"}, {SetExpr::from_parts(r, {{0, kPosInf}}, {}),
                                         SetExpr::from_parts(r, {{kNegInf, -1}}, {})});
  auto all = SetExpr::universe(r);
  EXPECT_FALSE(suffers_scarcity({}, all, two, half));
  EXPECT_FALSE(suffers_scarcity({Token::integer(1)}, all, two, half));
  auto five = SetExpr::from_parts(r, {{1, 5}, {kNegInf, -1}}, {});
  TokenSet t;
  for (int v = 1; v <= 5; ++v) t.insert(Token::integer(v));
  EXPECT_TRUE(suffers_scarcity(t, five, two, half));

  GroupPartition three({"low", "mid", "high"}, {SetExpr::from_parts(r, {{kNegInf, 0}}, {}),
                                                SetExpr::from_parts(r, {{1, 10}}, {}),
                                                SetExpr::from_parts(r, {{11, kPosInf}}, {})});
  auto inter = SetExpr::from_parts(r, {{0, 1}, {11, kPosInf}}, {});
  EXPECT_TRUE(suffers_scarcity({Token::integer(0), Token::integer(1), Token::integer(11)}, inter, three,
                               Rational(1, 4)));
}

TEST(ScarceWitness, TwoLanguageInstance) {
  auto c = corpus("two_repr.json");
  auto p = ints_vs_atom(c.registry());
  auto sets = c.sets();
  auto ev = max_scarce_witness(sets, 1, p, Rational(1, 2));
  EXPECT_EQ(ev.m, 9u);
  EXPECT_EQ(ev.witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.counts(ev.witness_set), (U64s{5, 4}));
  EXPECT_EQ(max_scarce_witness(sets, 1, p, Rational(1)).m, 0u);
  EXPECT_EQ(max_scarce_witness(std::span<const SetExpr>(sets).first(1), 0, p, Rational(1, 2)).m, 0u);
  EXPECT_THROW(max_scarce_witness(sets, 1, p, Rational(0)), Error);
}

TEST(Procedure3, TwoLanguageInstance) {
  auto c = corpus("two_repr.json");
  auto p = ints_vs_atom(c.registry());
  EXPECT_EQ(procedure3(c, p, Rational(1, 2), 2).m_star_values(), (U64s{0, 9}));
  EXPECT_EQ(procedure3(c, p, Rational(1, 4), 2).m_star_values(), (U64s{0, 19}));
  EXPECT_EQ(procedure3(c, p, Rational(1), 2).m_star_values(), (U64s{0, 0}));
  EXPECT_EQ(procedure3(corpus("single.json").prefix(1), GroupPartition({"all"}, {SetExpr::universe(make_registry({}))}),
                       Rational(1, 2), 1)
                .m_star_values(),
            U64s{0});
}

TEST(Schedule, GValues) {
  EXPECT_EQ(ScheduleFn::identity().g(7), 7u);
  EXPECT_EQ(ScheduleFn::power(2).g(8), 3u);
  auto f = sufficient_f(procedure1(corpus("blocks.json"), 8));
  EXPECT_EQ(f(1), 8u);
  EXPECT_EQ(f(101), 8u);
  EXPECT_EQ(f.g(3), 1u);
  EXPECT_EQ(f.g(8), 1u);
  try {
    f.g(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedSchedule);
  }
  auto table = ScheduleFn::explicit_table({1, 1, 4});
  EXPECT_EQ(table.g(2), 3u);
  EXPECT_THROW(table.g(5), Error);
  EXPECT_THROW(ScheduleFn::explicit_table({3, 1}), Error);
}

TEST(Schedule, NoisySufficientUsesDiagonalPositions) {
  auto t = procedure2(corpus("two_noisy.json"), 5);
  auto f = sufficient_f(t);
  for (const auto& e : t.entries) EXPECT_LE(f.g(e.position), e.m_star + 1);
  auto single = sufficient_f(procedure2(corpus("single.json"), 6));
  EXPECT_EQ(single.g(diag_index(2, 1)), 1u);
}

class DisjointSwap : public ::testing::TestWithParam<int> {};

// Swapping two adjacent languages that share no token leaves every m* alone.
TEST_P(DisjointSwap, MStarUnchanged) {
  auto c = oracle::random_collection(static_cast<std::uint64_t>(GetParam()), 6);
  auto base = procedure1(c, 6).m_star_values();
  for (std::size_t a = 0; a + 1 < 6; ++a) {
    if (!intersect(c[a], c[a + 1]).is_empty()) continue;
    std::vector<std::size_t> order{0, 1, 2, 3, 4, 5};
    std::swap(order[a], order[a + 1]);
    auto swapped = oracle::oracle_mstar(c.reordered(order), 6).m_star_values();
    std::swap(swapped[a], swapped[a + 1]);
    EXPECT_EQ(swapped, base) << "swap at " << a;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DisjointSwap, ::testing::Range(0, 100));
