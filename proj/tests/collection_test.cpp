#include <gtest/gtest.h>

#include "genlimit/collection.hpp"
#include "genlimit/error.hpp"
#include "genlimit/json_io.hpp"

using namespace genlimit;

namespace {

Collection data(const std::string& name) {
  return load_collection_file(std::string(GENLIMIT_DATA_DIR) + "/" + name);
}

}  // namespace

TEST(Collection, LoadsBlocks) {
  auto c = data("blocks.json");
  ASSERT_EQ(c.size(), 8u);
  EXPECT_EQ(c.registry()->size(), 8u);
  EXPECT_TRUE(c.lrt_limit().finite);
  EXPECT_EQ(c.lrt_limit().c, 100u);
  EXPECT_EQ(collection_to_json(load_collection(collection_to_json(c))), collection_to_json(c));
}

TEST(Collection, RejectsFiniteLanguages) {
  auto doc = Json::parse(R"({"atoms":[],"languages":[{"intervals":[[1,"inf"]]},{"intervals":[[1,100]]}]})");
  try {
    load_collection(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FiniteLanguage);
    EXPECT_NE(std::string(e.what()).find("language 2"), std::string::npos);
  }
  EXPECT_EQ(load_collection(Json::parse(R"({"languages":[]})")).size(), 0u);
  EXPECT_THROW(load_collection(Json::parse(R"({"languages":[{"atoms":["zz"]}]})")), Error);
}

TEST(Collection, ClosureDimension) {
  auto c = data("blocks.json");
  auto sets = c.sets();
  std::span<const SetExpr> all(sets);
  EXPECT_EQ(closure_dimension(all.first(1)), 0u);
  for (std::size_t i = 2; i <= 8; ++i) EXPECT_EQ(closure_dimension(all.first(i)), 100u);
  EXPECT_EQ(closure_dimension(data("single.json").sets()), 0u);
  EXPECT_EQ(closure_dimension(data("two_noisy.json").sets()), 5u);
}

TEST(Collection, CpComplexity) {
  auto c = data("blocks.json");
  std::vector<std::uint64_t> m;
  for (std::size_t i = 1; i <= 5; ++i) m.push_back(cp_complexity(c, i));
  EXPECT_EQ(m, (std::vector<std::uint64_t>{0, 100, 100, 100, 0}));
  auto re = data("blocks_reordered.json");
  m.clear();
  for (std::size_t i = 1; i <= 4; ++i) m.push_back(cp_complexity(re, i));
  EXPECT_EQ(m, (std::vector<std::uint64_t>{0, 0, 0, 100}));
  EXPECT_EQ(cp_complexity(data("single.json"), 1), 0u);
  EXPECT_THROW(cp_complexity(c, 9), Error);
}

TEST(Collection, BaselineTimes) {
  auto c = data("blocks.json");
  EXPECT_EQ(baseline_times(c, Baseline::Lrt), std::vector<std::uint64_t>(8, 101));
  EXPECT_EQ(baseline_times(c, Baseline::Cp), (std::vector<std::uint64_t>{1, 101, 101, 101, 5, 6, 7, 8}));
  EXPECT_EQ(baseline_times(data("two_noisy.json"), Baseline::Lrt), (std::vector<std::uint64_t>{1, 6}));
}

TEST(MaxFiniteIntersection, Witnesses) {
  auto sets = data("blocks.json").sets();
  std::vector<SetExpr> l12{sets[0], sets[1]};
  EXPECT_EQ(max_finite_intersection(l12, 1), (WitnessResult{100, {0, 1}}));
  std::vector<SetExpr> l13{sets[0], sets[2]};
  EXPECT_EQ(max_finite_intersection(l13, 1), (WitnessResult{0, {0, 1}}));
  EXPECT_EQ(max_finite_intersection(data("single.json").sets(), 0), (WitnessResult{0, {}}));
  EXPECT_EQ(max_finite_intersection(data("duplicate.json").sets(), 1), (WitnessResult{0, {}}));
  std::vector<SetExpr> many(21, sets[0]);
  EXPECT_THROW(max_finite_intersection(many, 0), Error);
}

TEST(MaxFiniteIntersection, TieBreakIsLexicographicallySmallest) {
  auto r = make_registry({});
  auto ray = [&](std::int64_t lo) { return SetExpr::from_parts(r, {{lo, kPosInf}}, {}); };
  auto down = SetExpr::from_parts(r, {{kNegInf, 10}}, {});
  // {0,2}, {1,2} and {0,1,2} all reach [5,10]; sequence order puts {0,1,2} first.
  std::vector<SetExpr> p{ray(5), ray(5), down};
  EXPECT_EQ(max_finite_intersection(p, 2), (WitnessResult{6, {0, 1, 2}}));
  // A strictly smaller intersection never wins a tie.
  std::vector<SetExpr> q{ray(7), ray(5), down};
  EXPECT_EQ(max_finite_intersection(q, 2), (WitnessResult{6, {1, 2}}));
}
