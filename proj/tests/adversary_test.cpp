#include <gtest/gtest.h>

#include "genlimit/adversary.hpp"
#include "genlimit/error.hpp"
#include "test_data.hpp"

using namespace genlimit;

namespace {
Token I(std::int64_t v) { return Token::integer(v); }
}  // namespace

TEST(Canonical, Ray) {
  auto r = make_registry({});
  auto toks = enumeration_order(SetExpr::from_parts(r, {{1, kPosInf}}, {}), 3);
  EXPECT_EQ(toks, (std::vector<Token>{I(1), I(2), I(3)}));
}

TEST(Canonical, BoundedPartsFirst) {
  auto c = corpus("blocks.json");
  auto s = canonical_enumeration(c, 0, 101);
  ASSERT_EQ(s.tokens.size(), 101u);
  for (std::int64_t v = 1; v <= 100; ++v) EXPECT_EQ(s.tokens[static_cast<std::size_t>(v - 1)], I(v));
  EXPECT_EQ(s.tokens[100], Token::atom(0, 0));
  EXPECT_TRUE(validate_script(s, c).ok);
}

TEST(Canonical, AtomStreamAndRoundRobin) {
  auto r = make_registry({"atom1"});
  EXPECT_EQ(enumeration_order(SetExpr::from_parts(r, {}, {{0, AtomPart{}}}), 2),
            (std::vector<Token>{Token::atom(0, 0), Token::atom(0, 1)}));
  auto both = enumeration_order(SetExpr::from_parts(r, {{5, kPosInf}}, {{0, AtomPart{}}}), 4);
  EXPECT_EQ(both, (std::vector<Token>{I(5), Token::atom(0, 0), I(6), Token::atom(0, 1)}));
  EXPECT_THROW(enumeration_order(SetExpr::from_parts(r, {{1, 3}}, {}), 2), Error);
}

TEST(Attack, BlocksL2) {
  auto c = corpus("blocks.json");
  auto t = procedure1(c, 8);
  auto s = intersection_first_attack(c, t, 1, 102);
  for (std::int64_t v = 1; v <= 100; ++v) EXPECT_EQ(s.tokens[static_cast<std::size_t>(v - 1)], I(v));
  EXPECT_EQ(s.tokens[100], I(101));
  EXPECT_TRUE(validate_script(s, c).ok);
}

TEST(Attack, NoWitness) {
  auto c = corpus("blocks.json");
  auto t = procedure1(c, 8);
  try {
    intersection_first_attack(c, t, 0, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoAttack);
  }
}

TEST(Attack, NoisyWitnessFirst) {
  auto c = corpus("two_noisy.json");
  auto t = procedure2(c, 5);
  Cell cell{1, 1};
  const auto& e = t.entries[*t.find(cell)];
  auto s = witness_attack(c, t, cell, 30);
  std::vector<Token> head(s.tokens.begin(), s.tokens.begin() + static_cast<long>(e.witness_set.size()));
  EXPECT_EQ(TokenSet(head.begin(), head.end()), e.witness_set);
  EXPECT_EQ(s.noise, 1u);
  auto check = validate_script(s, c);
  EXPECT_TRUE(check.ok);
  EXPECT_LE(check.out_of_language, 1u);
}

TEST(Attack, Representative) {
  auto c = corpus("two_repr.json");
  auto p = ints_vs_atom(c.registry());
  auto t = procedure3(c, p, Rational(1, 2), 2);
  auto s = witness_attack(c, t, {1, 0}, 12);
  const auto& e = t.entries[*t.find({1, 0})];
  ASSERT_EQ(e.m_star, 9u);
  TokenSet head(s.tokens.begin(), s.tokens.begin() + 9);
  EXPECT_EQ(head, e.witness_set);
  for (std::int64_t v = 1; v <= 5; ++v) EXPECT_TRUE(head.count(I(v)));
  for (std::size_t k = 9; k < s.tokens.size(); ++k) EXPECT_TRUE(s.tokens[k].is_atom());
  EXPECT_TRUE(validate_script(s, c).ok);
  EXPECT_THROW(witness_attack(c, t, {0, 0}, 12), Error);
  auto full = procedure3(c, p, Rational(1), 2);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_THROW(witness_attack(c, full, {i, 0}, 12), Error);
}

TEST(Validate, JunkBudget) {
  auto c = corpus("two_noisy.json");
  EnumerationScript s{{I(1), I(0), I(2), I(-1), I(3)}, 1, 1};
  auto check = validate_script(s, c);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.offending, std::vector<std::size_t>{3});
  s.noise = 2;
  EXPECT_TRUE(validate_script(s, c).ok);
}

TEST(Noisy, JunkIsCanonicallyLeastOutside) {
  auto c = corpus("two_noisy.json");
  auto s = noisy_enumeration(c, 1, 2, 6);
  EXPECT_EQ(s.tokens, (std::vector<Token>{I(0), I(-1), I(1), I(2), I(3), I(4)}));
  EXPECT_TRUE(validate_script(s, c).ok);
}

TEST(Script, JsonRoundTrip) {
  auto c = corpus("blocks.json");
  auto s = canonical_enumeration(c, 4, 5);
  auto j = script_to_json(s, *c.registry());
  EXPECT_EQ(script_from_json(j, *c.registry()), s);
  EXPECT_THROW(script_from_json(Json{{"target", 0}, {"tokens", Json::array()}}, *c.registry()), Error);
}
