// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pmon/bench.hpp"
#include "pmon/param_monitor.hpp"
#include "pmon/regex.hpp"
#include "pmon/selfcheck.hpp"
#include "pmon/slicer.hpp"
#include "test_util.hpp"

using namespace pmon;
using testutil::I;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs > budget_s) {
    out.ok = false;
    std::ostringstream s;
    s << "over time budget of " << budget_s << " s";
    out.detail = s.str();
  }
  if (!out.ok) ++failures;
  std::printf("[%s] %s %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.ok ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

using Column = std::map<std::string, std::string>;

void check_column(Outcome& out, const SliceTable& t, const Column& col, const std::string& name) {
  out.require(t.theta().size() == col.size(), name + ": wrong number of instances");
  for (const auto& [key, events] : col) {
    const auto inst = I(key);
    out.require(t.theta().contains(inst), name + ": missing <" + key + ">");
    if (t.theta().contains(inst))
      out.require(join_events(t.slice_at(inst)) == events, name + ": T(<" + key + ">) = " + join_events(t.slice_at(inst)));
  }
}

void ac1(Outcome& out) {
  const auto tau = testutil::fixture_trace("slicing.trace");
  out.require(tau.size() == 11, "fixture must have 11 events");
  SliceTable t;
  const std::map<std::size_t, Column> columns{
      {4, {{"", ""}, {"a=a1", "e1"}, {"a=a2", "e2"}, {"b=b1", "e3"}, {"a=a1,b=b1", "e1 e3"}, {"a=a2,b=b1", "e2 e3 e4"}}},
      {6,
       {{"", "e6"},
        {"a=a1", "e1 e5 e6"},
        {"a=a2", "e2 e6"},
        {"b=b1", "e3 e6"},
        {"a=a1,b=b1", "e1 e3 e5 e6"},
        {"a=a2,b=b1", "e2 e3 e4 e6"}}},
      {8,
       {{"", "e6"},
        {"a=a1", "e1 e5 e6"},
        {"a=a2", "e2 e6"},
        {"b=b1", "e3 e6 e7"},
        {"a=a1,b=b1", "e1 e3 e5 e6 e7"},
        {"a=a2,b=b1", "e2 e3 e4 e6 e7"},
        {"c=c1", "e6 e8"},
        {"a=a1,c=c1", "e1 e5 e6 e8"},
        {"a=a2,c=c1", "e2 e6 e8"},
        {"b=b1,c=c1", "e3 e6 e7 e8"},
        {"a=a1,b=b1,c=c1", "e1 e3 e5 e6 e7 e8"},
        {"a=a2,b=b1,c=c1", "e2 e3 e4 e6 e7 e8"}}},
      {11,
       {{"", "e6 e11"},
        {"a=a1", "e1 e5 e6 e11"},
        {"a=a2", "e2 e6 e11"},
        {"b=b1", "e3 e6 e7 e11"},
        {"a=a1,b=b1", "e1 e3 e5 e6 e7 e11"},
        {"a=a2,b=b1", "e2 e3 e4 e6 e7 e11"},
        {"c=c1", "e6 e8 e11"},
        {"a=a1,c=c1", "e1 e5 e6 e8 e11"},
        {"a=a2,c=c1", "e2 e6 e8 e9 e11"},
        {"b=b1,c=c1", "e3 e6 e7 e8 e11"},
        {"a=a1,b=b1,c=c1", "e1 e3 e5 e6 e7 e8 e10 e11"},
        {"a=a2,b=b1,c=c1", "e2 e3 e4 e6 e7 e8 e9 e11"}}}};
  for (std::size_t k = 0; k < tau.size(); ++k) {
    t.step(tau[k]);
    auto it = columns.find(k + 1);
    if (it != columns.end()) check_column(out, t, it->second, "after e" + std::to_string(k + 1));
  }
}

void ac2(Outcome& out) {
  SliceTable t;
  for (const auto& e : testutil::fixture_trace("slicing.trace")) t.step(e);
  const std::pair<const char*, const char*> lookups[] = {
      {"a=a1", "e1 e5 e6 e11"},
      {"a=a2", "e2 e6 e11"},
      {"a=a1,b=b1", "e1 e3 e5 e6 e7 e11"},
      {"a=a2,b=b1", "e2 e3 e4 e6 e7 e11"},
      {"", "e6 e11"},
      {"a=a1,b=b1,c=c1", "e1 e3 e5 e6 e7 e8 e10 e11"},
      {"a=a2,b=b1,c=c1", "e2 e3 e4 e6 e7 e8 e9 e11"},
      {"a=a1,b=b2,c=c1", "e1 e5 e6 e8 e11"},
      {"b=b2,c=c2", "e6 e11"},
  };
  for (const auto& [key, want] : lookups) {
    auto got = join_events(t.lookup(I(key)));
    out.require(got == want, std::string("lookup <") + key + "> = " + got);
  }
}

void ac3(Outcome& out) {
  const auto spec = parse_property_spec(testutil::read_fixture("acqrel.spec"));
  const auto tau = testutil::fixture_trace("resources.trace");
  const auto r1 = I("r=r1"), r2 = I("r=r2");
  const auto match = Verdict::of(VerdictTag::match), fail = Verdict::of(VerdictTag::fail);

  auto b = bmon_run(spec, tau);
  out.require(b.reports.size() == 1 && render_report(b.reports.at(0)) == "6\tfail\tr=r2\tend",
              "B: expected the single report 6 fail r=r2 end");
  out.require(b.gamma.at(r1) == match, "B: Γ(r1) is not match");
  out.require(b.gamma.at(r2) == fail, "B: Γ(r2) is not fail");

  CMonitor c(spec);
  std::vector<VerdictReport> reports;
  for (const auto& e : tau) {
    auto r = c.step(e);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  out.require(reports == b.reports, "C: reports differ from B");
  out.require(c.verdict_for(r1) == match, "C: verdict for r1 is not match");
  out.require(c.verdict_for(r2) == fail, "C: verdict for r2 is not fail");
}

void ac4(Outcome& out) {
  SelfcheckOptions o;
  o.seed = 2024;
  o.counts = 1000;
  o.max_events = 50;
  o.off_theta_queries = 10;
  auto r = run_selfcheck(o);
  out.require(r.all_passed(), summary_line(r) + (r.first_failure ? " / " + r.first_failure->message : ""));
  out.require(r.total == 1000, "expected 1000 traces");
}

InstanceSet join_sets(const InstanceSet& a, const InstanceSet& b) {
  InstanceSet out;
  for (const auto& x : a) out.merge(lub_set(x, b));
  return out;
}

void ac5(Outcome& out) {
  std::mt19937_64 rng(5);
  auto subset = [](const InstanceSet& a, const InstanceSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end(), InstanceOrder{});
  };
  for (int n = 0; n < 500 && out.ok; ++n) {
    const auto a = oracle::random_instance(rng), b = oracle::random_instance(rng), c = oracle::random_instance(rng);
    out.require(lub(a, b) == lub(b, a), "⊔ not commutative at " + a.key() + " / " + b.key());
    auto ab = lub(a, b), bc = lub(b, c);
    auto left = ab ? lub(*ab, c) : std::nullopt;
    auto right = bc ? lub(a, *bc) : std::nullopt;
    out.require(left == right, "⊔ not associative at " + a.key() + " / " + b.key() + " / " + c.key());

    const auto s = oracle::random_set(rng, 5), t = oracle::random_set(rng, 5);
    auto st = s;
    st.insert(t.begin(), t.end());
    const auto cs = lub_closure(s), cst = lub_closure(st);
    out.require(cs == oracle::closure(s), "closure differs from subset-lub brute force");
    out.require(subset(s, cs), "closure not extensive");
    out.require(subset(cs, cst), "closure not monotone");
    out.require(lub_closure(cs) == cs, "closure not idempotent");
    out.require(is_lub_closed(cs) && oracle::is_lub_closed(cs), "closure result not lub closed");
    out.require(cst == join_sets(cs, lub_closure(t)), "closure of union differs from ⊔ of closures");

    const auto q = oracle::random_instance(rng, 3, 3);
    out.require(std::optional(max_below(q, cs)) == oracle::max_below(q, cs), "max_below disagrees at " + q.key());
  }
}

void ac6(Outcome& out) {
  const std::vector<std::string> names{"x", "y", "z"};
  const int symbols = 3;
  std::mt19937_64 rng(6);
  int patterns = 0;
  while (patterns < 200 && out.ok) {
    auto p = oracle::random_pattern(rng, 3, symbols);
    const int occ = oracle::occurrences(*p);
    if (occ == 0 || occ > 6) continue;
    ++patterns;
    const auto text = oracle::render(*p, names);
    const auto m = regex::compile_regex(text, names);
    std::vector<int> word;
    std::function<void(int)> visit = [&](int state) {
      const std::string got(to_string(m.label[static_cast<std::size_t>(state)]));
      const auto want = oracle::classify(*p, word, symbols, m.state_count());
      if (got != want) {
        std::string w;
        for (int s : word) w += names[static_cast<std::size_t>(s)] + " ";
        out.require(false, "pattern " + text + " on '" + w + "': DFA " + got + ", brute force " + want);
        return;
      }
      if (word.size() == 6) return;
      for (int s = 0; s < symbols && out.ok; ++s) {
        word.push_back(s);
        visit(m.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(s)]);
        word.pop_back();
      }
    };
    visit(m.initial);
  }
}

void ac7(Outcome& out) {
  CMonitorOptions fast;
  fast.check_invariants = false;
  {
    const auto spec = bench::iterator_spec();
    const auto tau = bench::iterator_workload(100000, 7);
    out.require(tau.size() == 100000, "iterator workload size");
    BMonitor b(spec);
    CMonitor c(spec, fast);
    std::size_t defined_events = 0;
    for (std::size_t k = 0; k < tau.size() && out.ok; ++k) {
      const auto& e = tau[k];
      const bool was_defined = c.defined(e.instance);
      const std::size_t expected = 1 + c.more_informative(e.instance).size();
      b.step(e);
      c.step(e);
      const auto& s = c.last_stats();
      const std::string at = "iterator event " + std::to_string(k + 1) + ": ";
      if (was_defined) {
        ++defined_events;
        out.require(s.full_scans == 0, at + "C scanned the whole domain");
        out.require(s.compat_checks == 0, at + "C ran compatibility checks");
        out.require(s.touched == expected, at + "C touched " + std::to_string(s.touched) + ", expected " +
                                               std::to_string(expected));
      }
      out.require(b.last_stats().touched == s.touched, at + "B and C touched different state counts");
    }
    out.require(b.monitor_steps() == c.monitor_steps(), "B and C monitor_steps differ");
    out.require(defined_events > 90000, "too few already-defined events to be meaningful");
  }
  {
    const auto spec = bench::adversarial_spec();
    const auto tau = bench::adversarial_workload(5000, 7);
    BMonitor b(spec);
    CMonitor c(spec, fast);
    for (std::size_t k = 0; k < tau.size() && out.ok; ++k) {
      const auto compatible = lub_set(tau[k].instance, b.theta()).size();
      b.step(tau[k]);
      c.step(tau[k]);
      out.require(c.last_stats().touched <= compatible,
                  "adversarial event " + std::to_string(k + 1) + ": C touched " +
                      std::to_string(c.last_stats().touched) + " > " + std::to_string(compatible));
    }
    out.require(2 * c.instance_count() > tau.size(), "adversarial instance count did not grow linearly with the trace");
  }
}

void ac8(Outcome& out) {
  for (int which = 0; which < 2; ++which) {
    SelfcheckOptions o;
    o.seed = 2024;
    o.counts = 1000;
    (which == 0 ? o.mutate_skip_join : o.mutate_no_snapshot) = true;
    const char* name = which == 0 ? "skip-join" : "no-snapshot";
    auto r = run_selfcheck(o);
    out.require(!r.all_passed() && r.first_failure.has_value(), std::string(name) + " mutation went undetected");
    if (r.first_failure) {
      const auto expected = which == 0 ? CheckKind::b_vs_c : CheckKind::slicer_vs_oracle;
      out.require(r.first_failure->check == expected, std::string(name) + " caught by an unexpected check");
      std::printf("      %s: %s\n", name, summary_line(r).c_str());
    }
  }
}

}  // namespace

int main() {
  criterion("AC1", "slicing table replay at columns e4, e6, e8 and final", 1, ac1);
  criterion("AC2", "nine slice lookups including off-domain queries", 1, ac2);
  criterion("AC3", "resource trace verdicts under B and C", 1, ac3);
  criterion("AC4", "differential suite over 1000 seeded traces", 60, ac4);
  criterion("AC5", "lattice law suite over 500 random samples", 10, ac5);
  criterion("AC6", "regex monitor verdicts against brute-force classifier", 60, ac6);
  criterion("AC7", "per-event cost counters on iterator and adversarial workloads", 30, ac7);
  criterion("AC8", "both mutations detected by selfcheck", 60, ac8);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "ok", failures);
  return failures ? 1 : 0;
}
