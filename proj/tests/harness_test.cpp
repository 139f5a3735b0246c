#include <gtest/gtest.h>

#include "genlimit/error.hpp"
#include "genlimit/harness.hpp"
#include "test_data.hpp"

using namespace genlimit;

namespace {

RunConfig representative(const Collection& c, Rational alpha) {
  RunConfig cfg;
  cfg.setting = Setting::Representative;
  cfg.groups = load_groups_file(std::string(GENLIMIT_DATA_DIR) + "/two_repr_groups.json", c.registry());
  cfg.alpha = alpha;
  return cfg;
}

const NamedSequence& seq(const Comparison& cmp, const std::string& name) {
  for (const auto& s : cmp.sequences)
    if (s.name == name) return s;
  throw std::runtime_error("missing sequence " + name);
}

oracle::Dominance verdict(const Comparison& cmp, const std::string& a, const std::string& b) {
  for (const auto& v : cmp.verdicts)
    if (v.a == a && v.b == b) return v.verdict;
  throw std::runtime_error("missing verdict");
}

}  // namespace

TEST(Complexity, Tables) {
  EXPECT_EQ(complexity_table(corpus("blocks.json"), {}).m_star_values(),
            (std::vector<std::uint64_t>{0, 100, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(complexity_table(corpus("single.json"), {}).m_star_values(), std::vector<std::uint64_t>{0});
  RunConfig noisy;
  noisy.setting = Setting::Noisy;
  noisy.levels = 1;
  auto t = complexity_table(corpus("two_noisy.json"), noisy);
  EXPECT_EQ(t.entries[*t.find({1, 1})].m_star, 8u);
  EXPECT_THROW(complexity_table(corpus("two_repr.json"), RunConfig{Setting::Representative}), Error);
}

TEST(Simulate, Blocks) {
  auto c = corpus("blocks.json");
  RunConfig cfg;
  cfg.attack = AttackKind::IntersectionFirst;
  cfg.target = 1;
  auto r = simulate(c, cfg);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first_stable, 101u);
  EXPECT_TRUE(r[0].passed);
  cfg.attack = AttackKind::Canonical;
  cfg.target = 2;
  EXPECT_EQ(simulate(c, cfg)[0].first_stable, 1u);
  cfg.attack = AttackKind::IntersectionFirst;
  EXPECT_THROW(simulate(c, cfg), Error);
}

TEST(Simulate, RepresentativeLinf) {
  auto c = corpus("two_repr.json");
  auto cfg = representative(c, Rational(1, 2));
  for (const auto& r : simulate(c, cfg)) {
    EXPECT_TRUE(r.passed);
    for (const auto& st : r.steps) {
      ASSERT_TRUE(st.linf);
      EXPECT_LE(*st.linf, Rational(1, 2));
    }
  }
  cfg.attack = AttackKind::Repr;
  cfg.target = 1;
  EXPECT_TRUE(simulate(c, cfg)[0].passed);
}

TEST(Simulate, ExplicitScheduleExhausted) {
  auto c = corpus("blocks.json");
  RunConfig cfg;
  cfg.schedule = ScheduleKind::Table;
  cfg.schedule_table = {1, 2};
  cfg.target = 5;
  try {
    simulate(c, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedSchedule);
  }
}

TEST(Compare, Blocks) {
  auto cmp = compare(corpus("blocks.json"));
  EXPECT_EQ(seq(cmp, "cp-default").times, (std::vector<std::uint64_t>{1, 101, 101, 101, 5, 6, 7, 8}));
  EXPECT_EQ(seq(cmp, "lrt").times, std::vector<std::uint64_t>(8, 101));
  EXPECT_EQ(seq(cmp, "pareto").times, (std::vector<std::uint64_t>{1, 101, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(verdict(cmp, "cp-default", "cp-reordered"), oracle::Dominance::DominatedBy);
  EXPECT_EQ(verdict(cmp, "lrt", "cp-reordered"), oracle::Dominance::DominatedBy);
  for (const auto& v : cmp.verdicts)
    if (v.b == "pareto") EXPECT_NE(v.verdict, oracle::Dominance::Dominates);
  EXPECT_EQ(cmp.orderings, 40320u);
  EXPECT_GT(cmp.orderings_dominating_default, 0u);
  EXPECT_EQ(cmp.orderings_dominating_pareto, 0u);
}

TEST(Compare, SingletonAllEqual) {
  auto cmp = compare(corpus("single.json"));
  for (const auto& v : cmp.verdicts) EXPECT_EQ(v.verdict, oracle::Dominance::Equal) << v.a << " " << v.b;
}

class RandomCompare : public ::testing::TestWithParam<int> {};

TEST_P(RandomCompare, ParetoNeverDominated) {
  auto cmp = compare(oracle::random_collection(static_cast<std::uint64_t>(GetParam()), 6));
  for (const auto& v : cmp.verdicts)
    if (v.b == "pareto") EXPECT_NE(v.verdict, oracle::Dominance::Dominates) << v.a;
  EXPECT_EQ(cmp.orderings_dominating_pareto, 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomCompare, ::testing::Range(0, 20));

TEST(Verify, CorpusPasses) {
  for (const auto* name : {"blocks.json", "blocks_reordered.json", "single.json", "duplicate.json",
                           "two_noisy.json", "two_repr.json", "cominus_window.json", "rays_window.json"})
    for (const auto& r : verify(corpus(name), {})) EXPECT_TRUE(r.passed) << name << " " << r.name << " " << r.detail;
}

TEST(Verify, MutantCaughtOnBlocks) {
  for (const auto& r : verify(corpus("blocks.json"), {}))
    if (r.name == "mutant-self-test") {
      EXPECT_TRUE(r.passed);
      EXPECT_NE(r.detail.find("witness-structure"), std::string::npos);
    }
}

TEST(Verify, NoisyAndRepresentative) {
  RunConfig noisy;
  noisy.setting = Setting::Noisy;
  noisy.levels = 2;
  for (const auto& r : verify(corpus("two_noisy.json"), noisy)) EXPECT_TRUE(r.passed) << r.name << " " << r.detail;
  auto c = corpus("two_repr.json");
  for (auto a : {Rational(1, 4), Rational(1, 2), Rational(1)})
    for (const auto& r : verify(c, representative(c, a))) EXPECT_TRUE(r.passed) << r.name << " " << r.detail;
}

TEST(Report, RoundTripAndDeterminism) {
  auto c = corpus("two_repr.json");
  auto cfg = representative(c, Rational(1, 2));
  Report r;
  r.table = complexity_table(c, cfg);
  r.sims = simulate(c, cfg);
  auto cmp = compare(c);
  r.sequences = cmp.sequences;
  r.verdicts = cmp.verdicts;
  r.invariants = verify(c, cfg);
  r.seed = 7;
  auto j = report_to_json(r, *c.registry());
  auto back = report_from_json(j, *c.registry());
  EXPECT_EQ(back, r);
  EXPECT_EQ(report_to_json(back, *c.registry()).dump(), j.dump());

  Report again;
  again.table = complexity_table(c, cfg);
  again.sims = simulate(c, cfg);
  again.sequences = compare(c).sequences;
  again.verdicts = compare(c).verdicts;
  again.invariants = verify(c, cfg);
  again.seed = 7;
  EXPECT_EQ(report_to_json(again, *c.registry()).dump(), j.dump());
}

TEST(Groups, Loader) {
  auto c = corpus("two_repr.json");
  auto p = load_groups_file(std::string(GENLIMIT_DATA_DIR) + "/two_repr_groups.json", c.registry());
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.group_of(Token::integer(-4)), 0u);
  EXPECT_EQ(p.group_of(Token::atom(0, 3)), 1u);
  EXPECT_THROW(load_groups(Json{{"groups", Json::array({Json{{"name", "neg"}, {"intervals", {{"-inf", -1}}}}})}},
                           c.registry()),
               Error);
}
