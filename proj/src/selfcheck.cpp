#include "pmon/selfcheck.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pmon/error.hpp"
#include "pmon/param_monitor.hpp"
#include "pmon/slicer.hpp"

namespace pmon {

namespace {

const std::vector<std::string> kEvents = {"begin", "end", "acquire", "release"};
const std::vector<std::string> kParams = {"a", "b", "c"};

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string random_pattern(std::mt19937_64& rng, int depth) {
  if (depth == 0 || uniform(rng, 0, 3) == 0) return kEvents[uniform(rng, 0, kEvents.size() - 1)];
  switch (uniform(rng, 0, 4)) {
    case 0: return "(" + random_pattern(rng, depth - 1) + " " + random_pattern(rng, depth - 1) + ")";
    case 1: return "(" + random_pattern(rng, depth - 1) + " | " + random_pattern(rng, depth - 1) + ")";
    case 2: return "(" + random_pattern(rng, depth - 1) + ")*";
    case 3: return "(" + random_pattern(rng, depth - 1) + ")+";
    default: return "(" + random_pattern(rng, depth - 1) + ")?";
  }
}

// Random queries: parameters drawn from the spec, values from the trace plus
// one value that never occurs.
ParamInstance random_query(const std::vector<std::string>& params,
                           const std::map<std::string, std::vector<std::string>>& seen,
                           std::mt19937_64& rng) {
  std::vector<ParamInstance::Binding> bindings;
  for (const auto& p : params) {
    if (uniform(rng, 0, 2) == 0) continue;
    std::vector<std::string> pool{p + "_fresh"};
    if (auto it = seen.find(p); it != seen.end()) pool.insert(pool.end(), it->second.begin(), it->second.end());
    bindings.emplace_back(p, pool[uniform(rng, 0, pool.size() - 1)]);
  }
  return ParamInstance(std::move(bindings));
}

std::map<std::string, std::vector<std::string>> values_seen(const ParametricTrace& trace) {
  std::map<std::string, std::set<std::string>> sets;
  for (const auto& e : trace)
    for (const auto& [name, value] : e.instance.bindings()) sets[name].insert(value);
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [name, values] : sets) out[name].assign(values.begin(), values.end());
  return out;
}

std::vector<std::string> params_of(const ParametricTrace& trace) {
  std::set<std::string> names(kParams.begin(), kParams.end());
  for (const auto& e : trace)
    for (const auto& b : e.instance.bindings()) names.insert(b.first);
  return {names.begin(), names.end()};
}

std::string describe_states(const MonitorSpec& spec, const StateTable& b, const StateTable& c) {
  std::ostringstream out;
  out << "Dom(Δ) sizes B=" << b.size() << " C=" << c.size();
  for (const auto& [k, v] : b) {
    auto it = c.find(k);
    if (it == c.end()) {
      out << "; C lacks <" << k.key() << ">";
      break;
    }
    if (!(it->second == v)) {
      out << "; state differs at <" << k.key() << ">: B=" << to_string(monitor_output(spec, v))
          << " C=" << to_string(monitor_output(spec, it->second));
      break;
    }
  }
  return out.str();
}

// Greedy one-event deletion while `fails` keeps returning a message.
ParametricTrace minimize(ParametricTrace trace, const std::function<bool(const ParametricTrace&)>& fails) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      ParametricTrace smaller = trace;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(smaller)) {
        trace = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return trace;
}

}  // namespace

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::slicer_vs_oracle: return "A=oracle";
    case CheckKind::b_vs_c: return "B=C";
    case CheckKind::c_vs_reference: return "C=ref";
  }
  return "?";
}

std::string summary_line(const SelfcheckResult& r) {
  auto frac = [&](std::size_t ok) { return std::to_string(ok) + "/" + std::to_string(r.total); };
  return std::string(r.all_passed() ? "ok: " : "FAIL: ") + frac(r.slicer_ok) + " A=oracle, " +
         frac(r.bc_ok) + " B=C, " + frac(r.reference_ok) + " C=ref";
}

MonitorSpec random_spec(std::mt19937_64& rng, MonitorKind kind) {
  MonitorSpec spec;
  spec.name = "Random";
  spec.params = kParams;
  for (const auto& name : kEvents) {
    EventDecl decl{name, {}};
    for (const auto& p : kParams)
      if (uniform(rng, 0, 1)) decl.params.push_back(p);
    spec.events.push_back(std::move(decl));
  }
  spec.index_events();
  spec.kind = kind;
  switch (kind) {
    case MonitorKind::fsm: {
      const std::size_t n = uniform(rng, 2, 4);
      for (std::size_t s = 0; s < n; ++s) {
        spec.machine.state_names.push_back("s" + std::to_string(s));
        spec.machine.label.push_back(static_cast<VerdictTag>(uniform(rng, 0, 2)));
        std::vector<int> row;
        for (std::size_t e = 0; e < kEvents.size(); ++e) row.push_back(static_cast<int>(uniform(rng, 0, n - 1)));
        spec.machine.next.push_back(std::move(row));
      }
      spec.machine.initial = 0;
      spec.trigger_set = {VerdictTag::match, VerdictTag::fail};
      break;
    }
    case MonitorKind::regex: {
      // Round-trip through the text format so the parser is exercised too.
      spec.pattern = random_pattern(rng, 3);
      spec.trigger_set = {VerdictTag::match, VerdictTag::fail};
      return parse_property_spec(render_property_spec(spec));
    }
    case MonitorKind::balance:
      spec.balance = {0, 1, 2, 3};
      spec.trigger_set = {VerdictTag::match, VerdictTag::fail};
      break;
    case MonitorKind::ratio:
      spec.ratio.success = 2;
      spec.trigger_set = {VerdictTag::ratio};
      break;
  }
  return spec;
}

ParametricTrace random_trace(const MonitorSpec& spec, std::mt19937_64& rng, std::size_t max_events) {
  std::map<std::string, std::size_t> pool;
  for (const auto& p : spec.params) pool[p] = uniform(rng, 1, 3);
  ParametricTrace trace;
  const std::size_t n = uniform(rng, 0, max_events);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& decl = spec.events[uniform(rng, 0, spec.events.size() - 1)];
    std::vector<ParamInstance::Binding> bindings;
    for (const auto& p : decl.params)
      if (uniform(rng, 0, 1)) bindings.emplace_back(p, p + std::to_string(uniform(rng, 1, pool[p])));
    trace.push_back({decl.name, ParamInstance(std::move(bindings))});
  }
  return trace;
}

std::string check_slicer(const ParametricTrace& trace, std::mt19937_64& rng,
                         const SelfcheckOptions& options) {
  SliceTable table({options.cap, !options.mutate_no_snapshot});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    table.step(trace[i]);
    ParametricTrace prefix(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(i + 1));
    if (table.theta() != theta_of_trace(prefix))
      return "after event " + std::to_string(i + 1) + ": Θ differs from the lub closure of the prefix";
    for (const auto& theta : table.theta()) {
      auto got = table.slice_at(theta);
      auto want = slice_by_definition(prefix, theta);
      if (got != want)
        return "after event " + std::to_string(i + 1) + ": T(<" + theta.key() + ">) = '" +
               join_events(got) + "', definition gives '" + join_events(want) + "'";
    }
  }
  auto seen = values_seen(trace);
  auto params = params_of(trace);
  for (std::size_t q = 0; q < options.off_theta_queries; ++q) {
    auto theta = random_query(params, seen, rng);
    auto got = table.lookup(theta);
    auto want = slice_by_definition(trace, theta);
    if (got != want)
      return "lookup <" + theta.key() + "> = '" + join_events(got) + "', definition gives '" +
             join_events(want) + "'";
  }
  return {};
}

std::string check_b_vs_c(const MonitorSpec& spec, const ParametricTrace& trace,
                         const SelfcheckOptions& options) {
  EngineOptions eo;
  eo.cap = options.cap;
  CMonitorOptions co;
  co.cap = options.cap;
  co.join_phase = !options.mutate_skip_join;
  co.check_invariants = false;
  BMonitor b(spec, eo);
  CMonitor c(spec, co);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto rb = b.step(trace[i]);
    auto rc = c.step(trace[i]);
    std::string at = "after event " + std::to_string(i + 1) + ": ";
    if (rb != rc) return at + "report streams differ";
    auto dc = c.delta();
    if (b.delta() != dc) return at + describe_states(spec, b.delta(), dc);
    if (b.gamma() != c.gamma()) return at + "Γ tables differ";
  }
  return {};
}

std::string check_c_vs_reference(const MonitorSpec& spec, const ParametricTrace& trace,
                                 std::mt19937_64& rng, const SelfcheckOptions& options) {
  CMonitorOptions co;
  co.cap = options.cap;
  co.join_phase = !options.mutate_skip_join;
  co.check_invariants = false;
  CMonitor c(spec, co);
  for (const auto& e : trace) c.step(e);
  for (const auto& [theta, verdict] : c.gamma()) {
    auto want = run_monitor(spec, slice_by_definition(trace, theta));
    if (!(verdict == want))
      return "Γ(<" + theta.key() + ">) = " + to_string(verdict) + ", slice verdict is " + to_string(want);
  }
  auto seen = values_seen(trace);
  for (std::size_t q = 0; q < options.off_theta_queries; ++q) {
    auto theta = random_query(spec.params, seen, rng);
    auto got = c.verdict_for(theta);
    auto want = parametric_monitor_reference(spec, trace, theta);
    if (!(got == want))
      return "output at <" + theta.key() + "> = " + to_string(got) + ", reference gives " + to_string(want);
  }
  return {};
}

namespace {

// A broken table can violate lookup preconditions; that counts as a mismatch.
template <class F>
std::string guarded(F&& check) {
  try {
    return check();
  } catch (const PreconditionError& e) {
    return std::string("precondition violated: ") + e.what();
  }
}

}  // namespace

SelfcheckResult run_selfcheck(const SelfcheckOptions& options) {
  SelfcheckResult result;
  std::mt19937_64 rng(options.seed);
  static constexpr MonitorKind kKinds[] = {MonitorKind::fsm, MonitorKind::regex,
                                           MonitorKind::balance, MonitorKind::ratio};
  for (std::size_t n = 0; n < options.counts; ++n) {
    MonitorSpec spec = options.spec ? *options.spec : random_spec(rng, kKinds[n % 4]);
    spec.index_events();
    ParametricTrace trace = random_trace(spec, rng, options.max_events);
    const std::uint64_t query_seed = rng();
    ++result.total;

    auto record = [&](CheckKind kind, const std::string& message, auto&& rerun) {
      if (message.empty()) return true;
      if (!result.first_failure) {
        auto fails = [&](const ParametricTrace& t) { return !rerun(t).empty(); };
        auto small = minimize(trace, fails);
        result.first_failure = Counterexample{kind, rerun(small), spec, std::move(small)};
      }
      return false;
    };

    auto run_a = [&](const ParametricTrace& t) {
      std::mt19937_64 q(query_seed);
      return guarded([&] { return check_slicer(t, q, options); });
    };
    auto run_bc = [&](const ParametricTrace& t) {
      return guarded([&] { return check_b_vs_c(spec, t, options); });
    };
    auto run_ref = [&](const ParametricTrace& t) {
      std::mt19937_64 q(query_seed + 1);
      return guarded([&] { return check_c_vs_reference(spec, t, q, options); });
    };
    if (record(CheckKind::slicer_vs_oracle, run_a(trace), run_a)) ++result.slicer_ok;
    if (record(CheckKind::b_vs_c, run_bc(trace), run_bc)) ++result.bc_ok;
    if (record(CheckKind::c_vs_reference, run_ref(trace), run_ref)) ++result.reference_ok;
  }
  return result;
}

}  // namespace pmon
