#include "pmon/trace.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pmon/error.hpp"
#include "test_util.hpp"

using namespace pmon;
using testutil::I;
using testutil::S;
using testutil::W;

TEST(TraceFormat, ParsesEventsCommentsAndBlankLines) {
  auto t = parse_trace("# header\n\nacquire r=r1   # trailing\nend\n  next i=i1 c=v1\n");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], (ParametricEvent{"acquire", I("r=r1")}));
  EXPECT_EQ(t[1], (ParametricEvent{"end", {}}));
  EXPECT_EQ(t[2].instance, I("c=v1,i=i1"));
}

TEST(TraceFormat, RejectsRepeatedParameter) {
  EXPECT_THROW(parse_trace("e a=1 a=2\n"), DuplicateParam);
}

TEST(TraceFormat, ReportsLineOfMalformedEvent) {
  try {
    parse_trace("ok\n\nbad token\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_trace("9bad\n"), ParseError);
}

TEST(TraceFormat, StreamingReaderYieldsSameEvents) {
  std::istringstream in("a x=1\n#c\nb\n");
  TraceReader reader(in);
  auto e1 = reader.next();
  auto e2 = reader.next();
  EXPECT_TRUE(e1 && e2);
  EXPECT_FALSE(reader.next());
  EXPECT_EQ(e2->base, "b");
  EXPECT_EQ(reader.line(), 3u);
}

TEST(TraceFormat, RenderRoundTrips) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    ParametricTrace t;
    for (int k = 0; k < 10; ++k) t.push_back({"e" + std::to_string(rng() % 3), oracle::random_instance(rng)});
    EXPECT_EQ(parse_trace(render_trace(t)), t);
  }
}

TEST(Slicing, ExampleSlices) {
  const auto tau = testutil::fixture_trace("slicing.trace");
  ASSERT_EQ(tau.size(), 11u);
  EXPECT_EQ(slice_by_definition(tau, I("a=a1")), W("e1 e5 e6 e11"));
  EXPECT_EQ(slice_by_definition(tau, I("a=a2,b=b1,c=c1")), W("e2 e3 e4 e6 e7 e8 e9 e11"));
  EXPECT_EQ(slice_by_definition(tau, I("a=a1,b=b2,c=c1")), W("e1 e5 e6 e8 e11"));
  EXPECT_EQ(slice_by_definition(tau, I("b=b2,c=c2")), W("e6 e11"));
  EXPECT_EQ(slice_by_definition({}, I("a=a1")), BaseTrace{});
}

TEST(Slicing, ResourceTraceSlices) {
  const auto tau = testutil::fixture_trace("resources.trace");
  EXPECT_EQ(slice_by_definition(tau, I("r=r1")), W("begin acquire acquire release end begin end"));
  EXPECT_EQ(slice_by_definition(tau, I("r=r2")), W("begin acquire end begin acquire release end"));
}

TEST(ThetaOfTrace, Examples) {
  const auto theta = theta_of_trace(testutil::fixture_trace("slicing.trace"));
  EXPECT_EQ(theta, S({"", "a=a1", "a=a2", "b=b1", "a=a1,b=b1", "a=a2,b=b1", "c=c1", "a=a1,c=c1",
                      "a=a2,c=c1", "b=b1,c=c1", "a=a1,b=b1,c=c1", "a=a2,b=b1,c=c1"}));
  EXPECT_EQ(theta_of_trace(testutil::fixture_trace("resources.trace")), S({"", "r=r1", "r=r2"}));
  EXPECT_EQ(theta_of_trace({}), S({""}));
}

namespace {

ParametricTrace random_trace(std::mt19937_64& rng, int length) {
  ParametricTrace t;
  for (int k = 0; k < length; ++k) t.push_back({"e" + std::to_string(rng() % 3), oracle::random_instance(rng)});
  return t;
}

}  // namespace

TEST(ThetaOfTrace, MonotoneInPrefix) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 50; ++n) {
    auto tau = random_trace(rng, 12);
    InstanceSet previous = theta_of_trace({});
    for (std::size_t k = 1; k <= tau.size(); ++k) {
      auto current = theta_of_trace(ParametricTrace(tau.begin(), tau.begin() + k));
      EXPECT_TRUE(std::includes(current.begin(), current.end(), previous.begin(), previous.end(),
                                InstanceOrder{}));
      previous = current;
    }
  }
}

TEST(SlicingLaws, SliceEqualsSliceAtMaximum) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 200; ++n) {
    auto tau = random_trace(rng, 15);
    auto theta_set = theta_of_trace(tau);
    auto theta = oracle::random_instance(rng, 3, 3);
    EXPECT_EQ(slice_by_definition(tau, theta), slice_by_definition(tau, max_below(theta, theta_set)));
  }
}

TEST(SlicingLaws, SliceOfExtendedTrace) {
  // (τ e⟨θ'⟩)↾θ is τ↾θ e when θ' ⊑ θ and τ↾θ otherwise.
  std::mt19937_64 rng(14);
  for (int n = 0; n < 200; ++n) {
    auto tau = random_trace(rng, 8);
    ParametricEvent e{"x", oracle::random_instance(rng)};
    auto theta = oracle::random_instance(rng);
    auto extended = tau;
    extended.push_back(e);
    auto expected = slice_by_definition(tau, theta);
    if (less_informative(e.instance, theta)) expected.push_back("x");
    EXPECT_EQ(slice_by_definition(extended, theta), expected);
  }
}
