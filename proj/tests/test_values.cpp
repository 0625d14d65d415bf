#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "probeable/literal.hpp"
#include "probeable/value.hpp"
#include "value_gen.hpp"

using namespace probeable;

namespace {

Value nan_value() { return Value::floating(std::numeric_limits<double>::quiet_NaN()); }

std::size_t error_position(const std::string& text) {
  try {
    parse_literal(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "expected a parse error for " << text;
  return 0;
}

}  // namespace

TEST(Literal, ParsesListOfInts) {
  const Value v = parse_literal("[0, -1]");
  ASSERT_TRUE(v.is(Kind::List));
  ASSERT_EQ(v.items().size(), 2u);
  EXPECT_EQ(v.items()[0].as_int(), 0);
  EXPECT_EQ(v.items()[1].as_int(), -1);
}

TEST(Literal, ParsesEmptyTuple) {
  const Value v = parse_literal("()");
  EXPECT_TRUE(v.is(Kind::Tuple));
  EXPECT_TRUE(v.items().empty());
}

TEST(Literal, ParsesNanInsideList) {
  const Value v = parse_literal("[2, nan, 0]");
  ASSERT_EQ(v.items().size(), 3u);
  EXPECT_TRUE(v.items()[0].is(Kind::Int));
  EXPECT_TRUE(v.items()[1].is(Kind::Float));
  EXPECT_TRUE(std::isnan(v.items()[1].as_float()));
  EXPECT_EQ(v.items()[2].as_int(), 0);
}

TEST(Literal, KeywordsAndNegativeNan) {
  EXPECT_TRUE(parse_literal("None").is(Kind::Unit));
  EXPECT_TRUE(parse_literal("True").as_bool());
  EXPECT_FALSE(parse_literal("False").as_bool());
  const Value n = parse_literal("-nan");
  EXPECT_TRUE(n.is_nan());
  EXPECT_EQ(render_literal(n), "nan");
}

TEST(Literal, WhitespaceBetweenTokens) {
  EXPECT_TRUE(grading_equals(parse_literal("  ( 1 ,\t[ ] , 'x' )  "),
                             Value::tuple({Value::integer(1), Value::list({}), Value::string("x")})));
}

TEST(Literal, TupleNeedsComma) {
  EXPECT_TRUE(parse_literal("(1,)").is(Kind::Tuple));
  EXPECT_THROW(parse_literal("(1, 2,)"), ParseError);
  EXPECT_THROW(parse_literal("(1)"), ParseError);
}

TEST(Literal, Strings) {
  EXPECT_EQ(parse_literal("\"it's\"").as_str(), "it's");
  EXPECT_EQ(parse_literal(R"('a\'b\\c\nd\te')").as_str(), "a'b\\c\nd\te");
  EXPECT_THROW(parse_literal(R"('\x41')"), ParseError);
  EXPECT_THROW(parse_literal("'open"), ParseError);
  EXPECT_THROW(parse_literal("'\xff'"), ParseError);
}

TEST(Literal, RejectsOutOfGrammar) {
  for (const char* bad : {"", "inf", "-inf", "1e5", "1.", ".5", "01", "[1,", "[1 2]", "[,]", "{}", "none", "abc", "1 2",
                          "9223372036854775808", "-9223372036854775809", "--1", "+1"}) {
    EXPECT_THROW(parse_literal(bad), ParseError) << bad;
  }
}

TEST(Literal, IntegerRangeEdges) {
  EXPECT_EQ(parse_literal("9223372036854775807").as_int(), std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ(parse_literal("-9223372036854775808").as_int(), std::numeric_limits<std::int64_t>::min());
}

TEST(Literal, ErrorPositionsPointAtTheProblem) {
  EXPECT_EQ(error_position("[1,"), 3u);
  EXPECT_EQ(error_position("[1, @]"), 4u);
  EXPECT_EQ(error_position("x"), 0u);
  EXPECT_LE(error_position("'abc"), 4u);
}

TEST(Literal, DepthLimit) {
  EXPECT_NO_THROW(parse_literal(std::string(200, '[') + std::string(200, ']')));
  EXPECT_THROW(parse_literal(std::string(5000, '[') + std::string(5000, ']')), ParseError);
}

TEST(Literal, ParseArgumentsReportsIndex) {
  std::size_t index = 99;
  EXPECT_THROW(parse_arguments({"[1]", "[1,"}, &index), ParseError);
  EXPECT_EQ(index, 1u);
}

TEST(Render, CanonicalForms) {
  EXPECT_EQ(render_literal(Value::integer(-2)), "-2");
  EXPECT_EQ(render_literal(Value::tuple({Value::integer(0), Value::integer(1)})), "(0, 1)");
  EXPECT_EQ(render_literal(nan_value()), "nan");
  EXPECT_EQ(render_literal(Value::tuple({Value::integer(1)})), "(1,)");
  EXPECT_EQ(render_literal(Value::tuple({})), "()");
  EXPECT_EQ(render_literal(Value::floating(2.0)), "2.0");
  EXPECT_EQ(render_literal(Value::floating(-0.0)), "-0.0");
  EXPECT_EQ(render_literal(Value::floating(0.1)), "0.1");
  EXPECT_EQ(render_literal(Value::string("it's")), R"('it\'s')");
  EXPECT_EQ(render_literal(Value::list({Value::none(), Value::boolean(true)})), "[None, True]");
}

TEST(Render, CallForm) {
  EXPECT_EQ(render_call({Value::list({Value::integer(2)}), Value::integer(1)}), "([2], 1)");
  EXPECT_EQ(render_call({Value::list({})}), "([],)");
}

TEST(GradingEquals, KindStrict) {
  EXPECT_FALSE(grading_equals(Value::integer(1), Value::floating(1.0)));
  EXPECT_FALSE(grading_equals(Value::list({Value::integer(1)}), Value::tuple({Value::integer(1)})));
  EXPECT_FALSE(grading_equals(Value::boolean(true), Value::integer(1)));
  EXPECT_FALSE(grading_equals(Value::list({}), Value::list({Value::none()})));
}

TEST(GradingEquals, FloatRules) {
  EXPECT_TRUE(grading_equals(nan_value(), nan_value()));
  EXPECT_TRUE(grading_equals(Value::floating(0.0), Value::floating(-0.0)));
  EXPECT_FALSE(grading_equals(nan_value(), Value::floating(0.0)));
  EXPECT_TRUE(grading_equals(Value::list({nan_value()}), Value::list({nan_value()})));
}

TEST(Properties, RoundTripAndEquivalenceLaws) {
  probeable::testing::ValueGen gen(20240611);
  std::vector<Value> corpus;
  for (int i = 0; i < 2000; ++i) corpus.push_back(gen.next());
  for (const auto& v : corpus) {
    const std::string text = render_literal(v);
    const Value back = parse_literal(text);
    ASSERT_TRUE(grading_equals(back, v)) << text;
    ASSERT_EQ(render_literal(back), text);
    ASSERT_TRUE(grading_equals(v, v));
  }
  for (std::size_t i = 0; i + 2 < corpus.size(); ++i) {
    const Value& a = corpus[i];
    const Value& b = corpus[i + 1];
    ASSERT_EQ(grading_equals(a, b), grading_equals(b, a));
  }
}
