#include "pmon/monitor.hpp"

#include <algorithm>

#include "pmon/error.hpp"

namespace pmon {

std::string_view to_string(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::match: return "match";
    case VerdictTag::fail: return "fail";
    case VerdictTag::unknown: return "unknown";
    case VerdictTag::ratio: return "ratio";
  }
  return "?";
}

std::optional<VerdictTag> verdict_tag_from(std::string_view text) {
  for (auto tag : {VerdictTag::match, VerdictTag::fail, VerdictTag::unknown, VerdictTag::ratio})
    if (text == to_string(tag)) return tag;
  return std::nullopt;
}

std::string to_string(const Verdict& v) {
  if (v.tag == VerdictTag::ratio)
    return "ratio(" + std::to_string(v.successes) + "/" + std::to_string(v.total) + ")";
  return std::string(to_string(v.tag));
}

std::string_view to_string(MonitorKind kind) {
  switch (kind) {
    case MonitorKind::fsm: return "fsm";
    case MonitorKind::regex: return "regex";
    case MonitorKind::balance: return "balance";
    case MonitorKind::ratio: return "ratio";
  }
  return "?";
}

int MonitorSpec::event_id(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? -1 : it->second;
}

void MonitorSpec::index_events() {
  ids_.clear();
  for (std::size_t i = 0; i < events.size(); ++i) ids_.emplace(events[i].name, static_cast<int>(i));
}

MonitorState monitor_init(const MonitorSpec& spec) {
  switch (spec.kind) {
    case MonitorKind::fsm:
    case MonitorKind::regex: return spec.machine.initial;
    case MonitorKind::balance: return BalanceState{};
    case MonitorKind::ratio: return RatioState{};
  }
  return 0;
}

namespace {

BalanceState step_balance(const BalanceEvents& ids, BalanceState s, int ev) {
  if (s.violated) return s;
  if (ev == ids.begin) {
    s.frames.push_back(0);
  } else if (ev == ids.end) {
    // Closing the top level, or a frame with unreleased acquires, is fatal.
    if (s.frames.size() < 2 || s.frames.back() != 0) {
      s.violated = true;
    } else {
      s.frames.pop_back();
    }
  } else if (ev == ids.acquire) {
    ++s.frames.back();
  } else if (ev == ids.release) {
    if (s.frames.back() == 0) {
      s.violated = true;
    } else {
      --s.frames.back();
    }
  }
  return s;
}

}  // namespace

MonitorState monitor_step(const MonitorSpec& spec, const MonitorState& state, int event_id) {
  switch (spec.kind) {
    case MonitorKind::fsm:
    case MonitorKind::regex:
      return spec.machine.next[static_cast<std::size_t>(std::get<int>(state))]
                              [static_cast<std::size_t>(event_id)];
    case MonitorKind::balance:
      return step_balance(spec.balance, std::get<BalanceState>(state), event_id);
    case MonitorKind::ratio: {
      RatioState r = std::get<RatioState>(state);
      ++r.total;
      if (event_id == spec.ratio.success) ++r.successes;
      return r;
    }
  }
  return state;
}

MonitorState monitor_step(const MonitorSpec& spec, const MonitorState& state, std::string_view event) {
  int id = spec.event_id(event);
  if (id < 0) throw UnknownEvent("event '" + std::string(event) + "' is not in the alphabet of " + spec.name);
  return monitor_step(spec, state, id);
}

Verdict monitor_output(const MonitorSpec& spec, const MonitorState& state) {
  switch (spec.kind) {
    case MonitorKind::fsm:
    case MonitorKind::regex:
      return Verdict::of(spec.machine.label[static_cast<std::size_t>(std::get<int>(state))]);
    case MonitorKind::balance: {
      const auto& b = std::get<BalanceState>(state);
      if (b.violated) return Verdict::of(VerdictTag::fail);
      bool balanced = b.frames.size() == 1 && b.frames.front() == 0;
      return Verdict::of(balanced ? VerdictTag::match : VerdictTag::unknown);
    }
    case MonitorKind::ratio: {
      const auto& r = std::get<RatioState>(state);
      return Verdict::ratio(r.successes, r.total);
    }
  }
  return {};
}

Verdict run_monitor(const MonitorSpec& spec, const BaseTrace& word) {
  MonitorState s = monitor_init(spec);
  for (const auto& e : word) s = monitor_step(spec, s, e);
  return monitor_output(spec, s);
}

Verdict parametric_property_eval(const MonitorSpec& spec, const ParametricTrace& tau,
                                 const ParamInstance& theta) {
  return run_monitor(spec, slice_by_definition(tau, theta));
}

void check_event(const MonitorSpec& spec, const ParametricEvent& e, std::size_t index) {
  std::string where = index ? " (event " + std::to_string(index) + ")" : "";
  int id = spec.event_id(e.base);
  if (id < 0) throw UnknownEvent("event '" + e.base + "' is not declared in " + spec.name + where);
  const auto& declared = spec.decl(id).params;
  for (const auto& [name, value] : e.instance.bindings())
    if (std::find(declared.begin(), declared.end(), name) == declared.end())
      throw UndeclaredParameter(0, "parameter " + name + " is not declared for event " + e.base + where);
}

}  // namespace pmon
