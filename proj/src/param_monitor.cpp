#include "pmon/param_monitor.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "pmon/error.hpp"

namespace pmon {

namespace {

int resolve_event(const MonitorSpec& spec, const ParametricEvent& e, std::size_t index,
                  bool validate) {
  if (validate) check_event(spec, e, index);
  int id = spec.event_id(e.base);
  if (id < 0) throw UnknownEvent("event '" + e.base + "' is not declared in " + spec.name);
  return id;
}

// Records γ for `target` and appends a report when the verdict is a trigger.
template <typename GammaMap>
void assign_verdict(GammaMap& gamma, const ParamInstance& target, Verdict v,
                    const MonitorSpec& spec, const EngineOptions& options, std::size_t index,
                    const ParametricEvent& event, std::vector<VerdictReport>& reports) {
  auto it = gamma.find(target);
  bool changed = it == gamma.end() || !(it->second == v);
  if (spec.trigger_set.contains(v.tag) && (changed || options.report_every))
    reports.push_back({index, v, target, event});
  if (it == gamma.end()) {
    gamma.emplace(target, v);
  } else {
    it->second = v;
  }
}

void sort_reports(std::vector<VerdictReport>& reports) {
  std::sort(reports.begin(), reports.end(), [](const VerdictReport& a, const VerdictReport& b) {
    return InstanceOrder{}(a.instance, b.instance);
  });
}

}  // namespace

std::string render_report(const VerdictReport& r) {
  return std::to_string(r.event_index) + '\t' + to_string(r.verdict) + '\t' + r.instance.key() +
         '\t' + r.event.base;
}

// ---------------------------------------------------------------------------

BMonitor::BMonitor(const MonitorSpec& spec, EngineOptions options)
    : spec_(&spec), options_(options) {
  delta_.emplace(ParamInstance{}, monitor_init(spec));
  theta_.insert(ParamInstance{});
}

std::vector<VerdictReport> BMonitor::step(const ParametricEvent& event) {
  const std::size_t index = ++processed_;
  const int id = resolve_event(*spec_, event, index, options_.validate_events);

  last_ = {};
  last_.full_scans = 1;
  last_.compat_checks = theta_.size();
  InstanceSet targets = lub_set(event.instance, theta_);

  std::vector<std::pair<ParamInstance, MonitorState>> updates;
  updates.reserve(targets.size());
  for (const auto& target : targets) {
    const auto& source = delta_.at(max_below(target, theta_, options_.cap));
    updates.emplace_back(target, monitor_step(*spec_, source, id));
  }

  std::vector<VerdictReport> reports;
  for (auto& [target, state] : updates) {
    if (!delta_.contains(target)) ++last_.created;
    Verdict v = monitor_output(*spec_, state);
    delta_.insert_or_assign(target, std::move(state));
    assign_verdict(gamma_, target, v, *spec_, options_, index, event, reports);
  }
  theta_.insert(targets.begin(), targets.end());
  last_.touched = targets.size();
  monitor_steps_ += targets.size();
  sort_reports(reports);
  return reports;
}

Verdict BMonitor::verdict_for(const ParamInstance& theta) const {
  return monitor_output(*spec_, delta_.at(max_below(theta, theta_, options_.cap)));
}

BRun bmon_run(const MonitorSpec& spec, const ParametricTrace& tau, EngineOptions options) {
  BMonitor b(spec, options);
  BRun run;
  for (const auto& e : tau) {
    auto r = b.step(e);
    run.reports.insert(run.reports.end(), r.begin(), r.end());
  }
  run.delta = b.delta();
  run.gamma = b.gamma();
  return run;
}

// ---------------------------------------------------------------------------

CMonitor::CMonitor(const MonitorSpec& spec, CMonitorOptions options)
    : spec_(&spec), options_(options) {
  delta_.emplace(ParamInstance{}, monitor_init(spec));
}

const std::vector<ParamInstance>& CMonitor::more_informative(const ParamInstance& theta) const {
  static const std::vector<ParamInstance> kEmpty;
  auto it = more_.find(theta);
  return it == more_.end() ? kEmpty : it->second;
}

void CMonitor::define_to(const ParamInstance& theta, const ParamInstance& source) {
  assert(!delta_.contains(theta));
  assert(less_informative(source, theta));
  MonitorState copy = delta_.at(source);
  delta_.emplace(theta, std::move(copy));
  for (auto& below : strict_subinstances_desc(theta, options_.cap))
    more_[std::move(below)].push_back(theta);
  ++last_.created;
  if (options_.check_invariants && !u_index_consistent())
    throw PreconditionError("U index invariant broken after defining <" + theta.key() + ">");
}

std::vector<VerdictReport> CMonitor::step(const ParametricEvent& event) {
  const std::size_t index = ++processed_;
  const int id = resolve_event(*spec_, event, index, options_.validate_events);
  const ParamInstance& theta = event.instance;
  last_ = {};

  if (!delta_.contains(theta)) {
    const auto below = strict_subinstances_desc(theta, options_.cap);
    // Bottom is always defined, so the scan finds the maximum.
    auto source = std::find_if(below.begin(), below.end(),
                               [&](const ParamInstance& p) { return delta_.contains(p); });
    define_to(theta, *source);

    if (options_.join_phase) {
      for (const auto& lower : below) {
        auto it = more_.find(lower);
        if (it == more_.end()) continue;
        // define_to only appends instances above theta, whose join with theta
        // is already defined, so the original prefix is all that matters.
        const std::size_t n = it->second.size();
        for (std::size_t k = 0; k < n; ++k) {
          ++last_.compat_checks;
          const ParamInstance& comp = more_.at(lower)[k];
          auto joined = lub(comp, theta);
          if (!joined || delta_.contains(*joined)) continue;
          ParamInstance comp_copy = comp;
          define_to(*joined, comp_copy);
        }
      }
    }
  }

  std::vector<ParamInstance> targets;
  targets.reserve(1 + more_informative(theta).size());
  targets.push_back(theta);
  const auto& above = more_informative(theta);
  targets.insert(targets.end(), above.begin(), above.end());

  std::vector<VerdictReport> reports;
  for (const auto& target : targets) {
    auto& state = delta_.at(target);
    state = monitor_step(*spec_, state, id);
    assign_verdict(gamma_, target, monitor_output(*spec_, state), *spec_, options_, index, event,
                   reports);
  }
  last_.touched = targets.size();
  monitor_steps_ += targets.size();
  sort_reports(reports);
  return reports;
}

Verdict CMonitor::verdict_for(const ParamInstance& theta) const {
  auto contains = [&](const ParamInstance& p) { return delta_.contains(p); };
  return monitor_output(*spec_, delta_.at(max_below_if(theta, contains, options_.cap)));
}

bool CMonitor::u_index_consistent() const {
  std::size_t expected_entries = 0;
  for (const auto& [instance, state] : delta_) {
    (void)state;
    for (const auto& below : strict_subinstances_desc(instance, options_.cap)) {
      const auto& list = more_informative(below);
      if (std::count(list.begin(), list.end(), instance) != 1) return false;
      ++expected_entries;
    }
  }
  std::size_t actual_entries = 0;
  for (const auto& [lower, list] : more_) {
    for (const auto& upper : list)
      if (!delta_.contains(upper) || !strictly_less_informative(lower, upper)) return false;
    actual_entries += list.size();
  }
  return actual_entries == expected_entries;
}

StateTable CMonitor::delta() const { return {delta_.begin(), delta_.end()}; }
VerdictTable CMonitor::gamma() const { return {gamma_.begin(), gamma_.end()}; }

// ---------------------------------------------------------------------------

Verdict parametric_monitor_reference(const MonitorSpec& spec, const ParametricTrace& tau,
                                     const ParamInstance& theta) {
  MonitorState s = monitor_init(spec);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    check_event(spec, tau[i], i + 1);
    if (less_informative(tau[i].instance, theta)) s = monitor_step(spec, s, tau[i].base);
  }
  return monitor_output(spec, s);
}

}  // namespace pmon
