#include <gtest/gtest.h>

#include "pmon/error.hpp"
#include "pmon/monitor.hpp"
#include "test_util.hpp"

using namespace pmon;
using testutil::W;

namespace {

std::string header(const std::string& body) {
  return "property P\nparams: c, i\nevent create(c, i)\nevent next(i)\n" + body;
}

}  // namespace

TEST(SpecParser, UnsafeIter) {
  const auto spec = parse_property_spec(testutil::read_fixture("unsafeiter.spec"));
  EXPECT_EQ(spec.name, "UnsafeIter");
  EXPECT_EQ(spec.params, (std::vector<std::string>{"c", "i"}));
  ASSERT_EQ(spec.events.size(), 3u);
  EXPECT_EQ(spec.events[1].name, "next");
  EXPECT_EQ(spec.events[1].params, std::vector<std::string>{"i"});
  EXPECT_EQ(spec.kind, MonitorKind::regex);
  EXPECT_EQ(spec.trigger_set, std::set<VerdictTag>{VerdictTag::match});
  EXPECT_EQ(spec.event_id("updateColl"), 2);
  EXPECT_EQ(spec.event_id("remove"), -1);
}

TEST(SpecParser, HasNextFsm) {
  const auto spec = parse_property_spec(testutil::read_fixture("hasnext.spec"));
  EXPECT_EQ(spec.kind, MonitorKind::fsm);
  EXPECT_EQ(spec.machine.state_count(), 4u);
  EXPECT_EQ(spec.machine.state_names[static_cast<std::size_t>(spec.machine.initial)], "unknown");
  EXPECT_EQ(spec.trigger_set, std::set<VerdictTag>{VerdictTag::fail});
}

TEST(SpecParser, MissingTransitionsGoToFailingSink) {
  const auto spec = parse_property_spec(header(
      "monitor: fsm\nstate s0 initial\nstate s1\ntrans s0 create s1\nlabel s1 match\n"));
  EXPECT_EQ(spec.machine.state_count(), 3u);
  EXPECT_EQ(run_monitor(spec, W("create")), Verdict::of(VerdictTag::match));
  EXPECT_EQ(run_monitor(spec, W("create next")), Verdict::of(VerdictTag::fail));
  EXPECT_EQ(run_monitor(spec, {}), Verdict::of(VerdictTag::unknown));
}

TEST(SpecParser, DefaultTriggerSets) {
  EXPECT_EQ(parse_property_spec(header("monitor: regex\npattern: create next*\n")).trigger_set,
            std::set<VerdictTag>{VerdictTag::fail});
  EXPECT_EQ(parse_property_spec(testutil::read_fixture("ratio.spec")).trigger_set,
            std::set<VerdictTag>{VerdictTag::ratio});
  EXPECT_TRUE(parse_property_spec(header("monitor: regex\npattern: create\nreport:\n")).trigger_set.empty());
}

TEST(SpecParser, Errors) {
  EXPECT_THROW(parse_property_spec(header("monitor: regex\npattern: create nxt*\n")), UnknownEventInPattern);
  EXPECT_THROW(parse_property_spec(header("event next(i)\nmonitor: regex\npattern: create\n")),
               DuplicateEventDecl);
  EXPECT_THROW(parse_property_spec(header("event bad(q)\nmonitor: regex\npattern: create\n")),
               UndeclaredParameter);
  EXPECT_THROW(parse_property_spec(header("monitor: regex\npattern: (create\n")), PatternSyntaxError);
  EXPECT_THROW(parse_property_spec(header("monitor: banana\n")), SpecSyntaxError);
  EXPECT_THROW(parse_property_spec(header("frobnicate\n")), SpecSyntaxError);
  EXPECT_THROW(parse_property_spec(header("monitor: fsm\nstate a initial\ntrans a create a\ntrans a create a\n")),
               SpecSyntaxError);
  EXPECT_THROW(parse_property_spec(header("monitor: balance\n")), SpecSyntaxError);
}

TEST(SpecParser, ErrorsCarryLineNumbers) {
  try {
    parse_property_spec(header("monitor: regex\npattern: create\nreport: bogus\n"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST(SpecParser, RenderRoundTrips) {
  for (const char* name : {"unsafeiter.spec", "hasnext.spec", "acqrel.spec", "lockbalance.spec", "ratio.spec"}) {
    const auto spec = parse_property_spec(testutil::read_fixture(name));
    const auto text = render_property_spec(spec);
    const auto again = parse_property_spec(text);
    EXPECT_EQ(render_property_spec(again), text) << name;
    EXPECT_EQ(again.kind, spec.kind);
    EXPECT_EQ(again.trigger_set, spec.trigger_set);
    EXPECT_EQ(again.machine.state_count(), spec.machine.state_count()) << name;
  }
}
