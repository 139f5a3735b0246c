#include <random>

#include <gtest/gtest.h>

#include "genlimit/error.hpp"
#include "genlimit/setalg.hpp"

using namespace genlimit;

namespace {

RegistryPtr reg2() { return make_registry({"atom1", "atom2"}); }

SetExpr ivs(const RegistryPtr& r, std::vector<Interval> v, std::map<AtomId, AtomPart> a = {}) {
  return SetExpr::from_parts(r, std::move(v), std::move(a));
}

std::vector<Token> window(const AtomRegistry& r, std::int64_t lo, std::int64_t hi, std::uint64_t kmax) {
  std::vector<Token> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(Token::integer(v));
  for (AtomId a = 0; a < r.size(); ++a)
    for (std::uint64_t k = 0; k <= kmax; ++k) out.push_back(Token::atom(a, k));
  return out;
}

}  // namespace

TEST(Token, CanonicalOrderInterleavesSignsAndAtoms) {
  std::vector<Token> expect = {Token::integer(0), Token::atom(0, 0), Token::atom(1, 0),
                               Token::integer(1), Token::integer(-1), Token::atom(0, 1),
                               Token::atom(1, 1), Token::integer(2)};
  for (std::size_t i = 1; i < expect.size(); ++i) EXPECT_LT(expect[i - 1], expect[i]);
  EXPECT_EQ(Token::integer(-3).round(), 3u);
  EXPECT_THROW(Token::integer(kPosInf), Error);
}

TEST(SetExpr, NormalizationMergesAdjacentAndOverlapping) {
  auto r = reg2();
  auto s = ivs(r, {{5, 9}, {1, 3}, {4, 4}, {20, 10}, {8, kPosInf}});
  ASSERT_EQ(s.intervals().size(), 1u);
  EXPECT_EQ(s.intervals()[0], (Interval{1, kPosInf}));
  auto again = SetExpr::from_parts(r, s.intervals(), s.atom_parts());
  EXPECT_EQ(again, s);
}

TEST(SetExpr, BlocksIntersectionIsFinite) {
  auto r = make_registry({"p1", "p2"});
  auto l1 = ivs(r, {{1, 100}}, {{0, AtomPart{}}});
  auto l2 = ivs(r, {{1, 300}}, {{1, AtomPart{}}});
  auto both = intersect(l1, l2);
  EXPECT_EQ(both.intervals(), (std::vector<Interval>{{1, 100}}));
  EXPECT_TRUE(both.atom_parts().empty());
  EXPECT_EQ(cardinality(both), Cardinality::finite(100));
  EXPECT_EQ(intersect(l1, l1), l1);

  TokenSet first100;
  for (int v = 1; v <= 100; ++v) first100.insert(Token::integer(v));
  auto rest = subtract_finite(l2, first100);
  EXPECT_EQ(rest, ivs(r, {{101, 300}}, {{1, AtomPart{}}}));

  EXPECT_EQ(violations({Token::integer(1), Token::integer(200)}, l1), 1u);
  EXPECT_EQ(violations({Token::integer(1)}, l1), 0u);
  EXPECT_EQ(violations({}, l1), 0u);
}

TEST(SetExpr, IntervalAtomIntersection) {
  auto r = reg2();
  auto a = ivs(r, {{1, 5}}, {{0, AtomPart{}}});
  auto b = ivs(r, {{3, kPosInf}});
  EXPECT_EQ(intersect(a, b), ivs(r, {{3, 5}}));
}

TEST(SetExpr, Complement) {
  auto r = reg2();
  EXPECT_TRUE(complement(SetExpr::universe(r)).is_empty());
  EXPECT_EQ(complement(ivs(r, {{0, kPosInf}})),
            ivs(r, {{kNegInf, -1}}, {{0, AtomPart{}}, {1, AtomPart{}}}));
  EXPECT_EQ(complement(ivs(r, {{1, 5}}, {{0, AtomPart{}}})),
            ivs(r, {{kNegInf, 0}, {6, kPosInf}}, {{1, AtomPart{}}}));
}

TEST(SetExpr, SubtractFinite) {
  auto r = reg2();
  EXPECT_EQ(subtract_finite(ivs(r, {{1, 3}}), {Token::integer(2)}), ivs(r, {{1, 1}, {3, 3}}));
  auto s = subtract_finite(ivs(r, {}, {{0, AtomPart{}}}), {Token::atom(0, 0)});
  EXPECT_EQ(s, ivs(r, {}, {{0, AtomPart{true, {0}}}}));
  EXPECT_FALSE(s.contains(Token::atom(0, 0)));
  EXPECT_TRUE(s.contains(Token::atom(0, 1)));
}

TEST(SetExpr, Cardinality) {
  auto r = reg2();
  EXPECT_EQ(cardinality(SetExpr::empty(r)), Cardinality::finite(0));
  EXPECT_TRUE(cardinality(ivs(r, {{1, 5}}, {{0, AtomPart{true, {0, 1}}}})).is_infinite());
  EXPECT_EQ(cardinality(ivs(r, {{1, 5}}, {{0, AtomPart{false, {0, 7}}}})), Cardinality::finite(7));
}

TEST(SetExpr, LeastNew) {
  auto r = reg2();
  EXPECT_EQ(least_new(ivs(r, {{1, kPosInf}}), {Token::integer(1)}), Token::integer(2));
  EXPECT_EQ(least_new(SetExpr::empty(r), {}), std::nullopt);
  EXPECT_EQ(least_new(ivs(r, {{1, 3}}, {{0, AtomPart{}}}),
                      {Token::integer(1), Token::integer(2), Token::integer(3)}),
            Token::atom(0, 0));
  EXPECT_EQ(least_new(ivs(r, {{-5, 5}}), {Token::integer(0), Token::integer(1)}), Token::integer(-1));
}

TEST(SetExpr, RegistryMismatchThrows) {
  auto a = SetExpr::universe(make_registry({"x"}));
  auto b = SetExpr::universe(make_registry({"y"}));
  try {
    intersect(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Registry);
  }
}

TEST(CanonicalCursor, EnumeratesInTokenOrder) {
  auto r = reg2();
  auto s = ivs(r, {{kNegInf, -10}, {-3, 4}, {50, kPosInf}}, {{0, AtomPart{true, {1}}}, {1, AtomPart{false, {2, 9}}}});
  auto got = canonical_prefix(s, 200);
  ASSERT_EQ(got.size(), 200u);
  for (std::size_t i = 1; i < got.size(); ++i) ASSERT_LT(got[i - 1], got[i]);
  for (const auto& t : got) ASSERT_TRUE(s.contains(t));
  // The scan must not skip members: every member below the last emitted one appears.
  auto last = got.back();
  std::size_t members = 0;
  for (const auto& t : window(*r, -200, 200, 200))
    if (t < last && s.contains(t)) ++members;
  EXPECT_EQ(members + 1, got.size());
}

// Random normal forms over a bounded window with at most three atoms.
class AlgebraProperty : public ::testing::TestWithParam<int> {};

namespace {

SetExpr random_set(std::mt19937_64& rng, const RegistryPtr& r) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<Interval> v;
  for (int n = static_cast<int>(rng() % 4); n > 0; --n) {
    auto lo = pick(-40, 40);
    auto hi = lo + pick(0, 15);
    if (rng() % 6 == 0) lo = kNegInf;
    if (rng() % 6 == 0) hi = kPosInf;
    v.push_back({lo, hi});
  }
  std::map<AtomId, AtomPart> atoms;
  for (AtomId a = 0; a < r->size(); ++a) {
    if (rng() % 3 == 0) continue;
    AtomPart p{rng() % 2 == 0, {}};
    for (int n = static_cast<int>(rng() % 4); n > 0; --n) p.indices.insert(rng() % 21);
    atoms[a] = p;
  }
  return SetExpr::from_parts(r, v, atoms);
}

}  // namespace

TEST_P(AlgebraProperty, MembershipMatchesBruteForce) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  auto r = make_registry({"a", "b", "c"});
  auto toks = window(*r, -50, 50, 20);
  for (int rep = 0; rep < 20; ++rep) {
    auto a = random_set(rng, r);
    auto b = random_set(rng, r);
    TokenSet drop;
    for (int n = 0; n < 5; ++n) drop.insert(toks[rng() % toks.size()]);
    auto ab = intersect(a, b);
    auto u = unite(a, b);
    auto ca = complement(a);
    auto sub = subtract_finite(a, drop);
    auto demorgan = unite(complement(a), complement(b));
    for (const auto& t : toks) {
      bool in_a = a.contains(t), in_b = b.contains(t);
      ASSERT_EQ(ab.contains(t), in_a && in_b);
      ASSERT_EQ(u.contains(t), in_a || in_b);
      ASSERT_EQ(ca.contains(t), !in_a);
      ASSERT_EQ(sub.contains(t), in_a && !drop.count(t));
      ASSERT_EQ(complement(ab).contains(t), demorgan.contains(t));
    }
    EXPECT_EQ(complement(complement(a)), a);
    EXPECT_EQ(SetExpr::from_parts(r, a.intervals(), a.atom_parts()), a);

    auto card = cardinality(ab);
    if (card.is_finite()) {
      EXPECT_EQ(enumerate_finite(ab).size(), card.count());
    } else {
      EXPECT_TRUE(least_new(ab, drop).has_value());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AlgebraProperty, ::testing::Range(0, 25));
