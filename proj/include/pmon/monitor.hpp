#pragma once

// Base monitors (S, E, C, ι, σ, γ) and the four plugins: explicit FSM,
// three-verdict regex, balanced acquire/release counter, and success ratio.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pmon/lattice.hpp"
#include "pmon/trace.hpp"

namespace pmon {

enum class VerdictTag { match, fail, unknown, ratio };

std::string_view to_string(VerdictTag tag);
std::optional<VerdictTag> verdict_tag_from(std::string_view text);

/// Output category. `successes`/`total` are meaningful only for ratio.
struct Verdict {
  VerdictTag tag = VerdictTag::unknown;
  std::uint64_t successes = 0;
  std::uint64_t total = 0;

  static Verdict of(VerdictTag t) { return {t, 0, 0}; }
  static Verdict ratio(std::uint64_t s, std::uint64_t t) { return {VerdictTag::ratio, s, t}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// `match`, `fail`, `unknown`, or `ratio(s/t)`.
std::string to_string(const Verdict& v);

enum class MonitorKind { fsm, regex, balance, ratio };

std::string_view to_string(MonitorKind kind);

struct EventDecl {
  std::string name;
  std::vector<std::string> params;
};

/// Deterministic total transition table with a verdict per state. Both the
/// FSM and the compiled regex plugins run on it.
struct TableMachine {
  std::vector<std::string> state_names;
  std::vector<std::vector<int>> next;  // next[state][event id]
  std::vector<VerdictTag> label;
  int initial = 0;

  std::size_t state_count() const { return next.size(); }
};

struct BalanceEvents {
  int begin = -1, end = -1, acquire = -1, release = -1;
};

struct RatioEvents {
  int success = -1;
};

struct MonitorSpec {
  std::string name;
  std::vector<std::string> params;
  std::vector<EventDecl> events;
  MonitorKind kind = MonitorKind::fsm;
  std::string pattern;  // regex kind, as written
  TableMachine machine;  // fsm and regex kinds
  BalanceEvents balance;
  RatioEvents ratio;
  std::set<VerdictTag> trigger_set;

  /// Index into `events`, or -1.
  int event_id(std::string_view name) const;
  const EventDecl& decl(int id) const { return events.at(static_cast<std::size_t>(id)); }

  /// Rebuilds the name index; call after editing `events` by hand.
  void index_events();

 private:
  std::unordered_map<std::string, int> ids_;
};

struct BalanceState {
  // Open acquires per active frame; frames[0] is the top level.
  std::vector<std::int64_t> frames{0};
  bool violated = false;

  friend bool operator==(const BalanceState&, const BalanceState&) = default;
};

struct RatioState {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;

  friend bool operator==(const RatioState&, const RatioState&) = default;
};

/// A plain value; copying it yields an independent monitor instance.
using MonitorState = std::variant<int, BalanceState, RatioState>;

MonitorState monitor_init(const MonitorSpec& spec);

/// σ by event id. The id must be valid for `spec`.
MonitorState monitor_step(const MonitorSpec& spec, const MonitorState& state, int event_id);

/// σ by name; throws UnknownEvent outside the alphabet.
MonitorState monitor_step(const MonitorSpec& spec, const MonitorState& state, std::string_view event);

/// γ.
Verdict monitor_output(const MonitorSpec& spec, const MonitorState& state);

/// γ(σ(ι, word)).
Verdict run_monitor(const MonitorSpec& spec, const BaseTrace& word);

/// (ΛX.P)(τ)(θ) = P(τ↾θ): the base monitor run on the definitional slice.
Verdict parametric_property_eval(const MonitorSpec& spec, const ParametricTrace& tau,
                                 const ParamInstance& theta);

/// Throws UnknownEvent / UndeclaredParameter if `e` does not conform to `spec`.
void check_event(const MonitorSpec& spec, const ParametricEvent& e, std::size_t index = 0);

/// Parses the property-spec format. Throws SpecSyntaxError, UndeclaredParameter,
/// DuplicateEventDecl, PatternSyntaxError, UnknownEventInPattern.
MonitorSpec parse_property_spec(std::string_view text);

}  // namespace pmon

namespace pmon {

/// Property-spec text that parses back to an equivalent spec. Regex specs are
/// rendered with their pattern, FSM specs with their full transition table.
std::string render_property_spec(const MonitorSpec& spec);

}  // namespace pmon
