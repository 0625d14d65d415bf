#include <gtest/gtest.h>

#include <set>

#include "probeable/digest.hpp"
#include "probeable/generators.hpp"
#include "probeable/literal.hpp"
#include "support.hpp"

using namespace probeable;
using probeable::testing::bundled_bank;

namespace {

struct NamedClass {
  std::string label;
  const ProblemDef* problem;
  ClassSpec spec;
};

std::vector<NamedClass> all_classes() {
  std::vector<NamedClass> out;
  for (const auto& p : bundled_bank().problems) {
    out.push_back({p.id + "/base", &p, p.base_class});
    out.push_back({p.id + "/catch_all", &p, p.catch_all_class});
    for (const auto& o : p.omissions) out.push_back({p.qualified_id(o), &p, o.class_spec});
  }
  return out;
}

}  // namespace

TEST(Rng, UniformStaysInRangeAndIsDeterministic) {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.uniform(-3, 5);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 5);
    EXPECT_EQ(x, b.uniform(-3, 5));
  }
  Rng c(1);
  EXPECT_EQ(c.uniform(4, 4), 4);
  EXPECT_THROW(c.uniform(5, 4), std::invalid_argument);
  Rng full(3);
  full.uniform(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
}

TEST(Rng, CoversSmallRange) {
  Rng r(11);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 500; ++i) seen.insert(r.uniform(0, 6));
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Generators, AllClassesSampleInClassAndDomain) {
  for (const auto& c : all_classes()) {
    auto cls = make_input_class(c.spec);
    const auto inputs = cls->draw(derive_seed(5, c.label), 200);
    EXPECT_EQ(inputs.size(), cls->boundary().size() + 200) << c.label;
    for (const auto& in : inputs) {
      ASSERT_FALSE(check_domain(*c.problem, in)) << c.label << " " << render_call(in);
      ASSERT_TRUE(cls->contains(in)) << c.label << " " << render_call(in);
    }
  }
}

TEST(Generators, DrawIsDeterministicPerSeed) {
  for (const auto& c : all_classes()) {
    auto cls = make_input_class(c.spec);
    const auto a = cls->draw(42, 50);
    const auto b = cls->draw(42, 50);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_TRUE(grading_equals(a[i], b[i])) << c.label;
  }
}

TEST(Generators, DifferentSeedsDiffer) {
  const auto& p1 = *bundled_bank().find("p1");
  auto cls = make_input_class(p1.base_class);
  const auto a = cls->draw(1, 30);
  const auto b = cls->draw(2, 30);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += grading_equals(a[i], b[i]) ? 1 : 0;
  EXPECT_LT(same, a.size());
}

TEST(Generators, BoundaryComesFirst) {
  const auto& p5 = *bundled_bank().find("p5");
  const Omission* nan_key = p5.find_omission("B.nan_key");
  ASSERT_NE(nan_key, nullptr);
  auto cls = make_input_class(nan_key->class_spec);
  const auto inputs = cls->draw(9, 3);
  const auto boundary = cls->boundary();
  ASSERT_FALSE(boundary.empty());
  for (std::size_t i = 0; i < boundary.size(); ++i) EXPECT_TRUE(grading_equals(inputs[i], boundary[i]));
  for (const auto& in : inputs) EXPECT_TRUE(in[1].is_nan());
}

TEST(Generators, RegionsPartitionTheDomain) {
  const auto& p4 = *bundled_bank().find("p4");
  auto any = make_input_class(p4.catch_all_class);
  std::vector<std::unique_ptr<InputClass>> parts;
  for (const std::string region :
       {"empty", "non_positive", "no_trade", "zero_unique", "zero_tied", "tied_best", "unordered", "base"}) {
    parts.push_back(make_input_class({"p4_prices", {{"region", region}}}));
  }
  for (const auto& in : any->draw(3, 2000)) {
    std::size_t owners = 0;
    for (const auto& part : parts) owners += part->contains(in) ? 1 : 0;
    ASSERT_EQ(owners, 1u) << render_call(in);
  }
}

TEST(Generators, RejectsBadSpecs) {
  EXPECT_THROW(make_input_class({"missing", nlohmann::json::object()}), std::invalid_argument);
  EXPECT_THROW(make_input_class({"p1_lists", {{"region", "nope"}}}), std::invalid_argument);
  EXPECT_THROW(make_input_class({"p1_lists", {{"region", "base"}, {"max_len", "x"}}}), std::invalid_argument);
  EXPECT_THROW(make_input_class({"p1_lists", {{"region", "no_positive"}, {"lo", 1}, {"hi", 5}}}), std::invalid_argument);
  EXPECT_THROW(make_input_class({"palindrome_text", {{"alphabet", ""}}}), std::invalid_argument);
}

TEST(Generators, NamesAreRegistered) {
  const auto names = generator_names();
  const std::set<std::string> got(names.begin(), names.end());
  for (const char* n : {"palindrome_text", "p1_lists", "p2_text", "p3_lists", "p4_prices", "p5_queries"}) {
    EXPECT_TRUE(got.count(n)) << n;
  }
}
