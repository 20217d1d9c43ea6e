#include <gtest/gtest.h>

#include "perhom/errors.hpp"
#include "perhom/suites.hpp"

using namespace perhom;

TEST(Suites, OneNamePerCriterion) {
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 11u);
  EXPECT_EQ(names.front(), "embedding");
  EXPECT_EQ(names.back(), "determinism");
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == "determinism") continue;
    EXPECT_EQ(run_suite(names[k], 1).criterion, static_cast<int>(k) + 1);
  }
  EXPECT_FALSE(is_suite("nonsense"));
  EXPECT_THROW(run_suite("nonsense", 1), InvalidInput);
}

TEST(Suites, EmbeddingAtSeedSeven) {
  auto r = run_suite("embedding", 7);
  EXPECT_TRUE(r.holds());
  ASSERT_EQ(r.details.size(), 3u);
  for (const auto& row : r.details) {
    EXPECT_EQ(row["pairs"], 25);
    EXPECT_EQ(row["equal"], 25);
  }
}

TEST(Suites, ReportsDependOnlyOnSeed) {
  for (const char* name : {"embedding", "bgg-square", "flag-subquotients"}) {
    const std::string a = canonical(to_json(run_suite(name, 11)));
    EXPECT_EQ(a, canonical(to_json(run_suite(name, 11))));
    EXPECT_NE(a, canonical(to_json(run_suite(name, 12)))) << name << " ignores its seed";
  }
}

TEST(Suites, OtherSeedsAlsoHold) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& name : suite_names()) {
      if (name == "determinism") continue;
      auto r = run_suite(name, seed);
      EXPECT_TRUE(r.holds()) << name << " seed " << seed << " " << r.findings.dump();
    }
  }
}

TEST(Suites, TableRendering) {
  json rows = json::array({{{"n", 1}, {"passed", 25}}, {{"n", 12}, {"passed", 3}}});
  EXPECT_EQ(aligned_table(rows), "  n   passed\n  1   25\n  12  3\n");
  auto text = to_table(run_suite("bgg-cohomology", 0));
  EXPECT_NE(text.find("passed     6/6"), std::string::npos) << text;
}
