#pragma once

// Parametric events and traces, the line-oriented trace-log format, and the
// definitional slicing oracle.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmon/lattice.hpp"

namespace pmon {

/// A base event is identified by its name.
using BaseEvent = std::string;
using BaseTrace = std::vector<BaseEvent>;

struct ParametricEvent {
  BaseEvent base;
  ParamInstance instance;

  friend bool operator==(const ParametricEvent&, const ParametricEvent&) = default;
};

using ParametricTrace = std::vector<ParametricEvent>;

/// Incremental reader for the trace-log format, for streaming consumers.
class TraceReader {
 public:
  explicit TraceReader(std::istream& in) : in_(&in) {}

  /// Next event, or nullopt at end of input. Throws ParseError / DuplicateParam.
  std::optional<ParametricEvent> next();

  std::size_t line() const { return line_; }

 private:
  std::istream* in_;
  std::size_t line_ = 0;
};

/// Parses the trace-log format: one event per line, `name p=v ...`, `#` starts
/// a comment, blank lines ignored. Throws ParseError / DuplicateParam.
ParametricTrace parse_trace(std::istream& in);
ParametricTrace parse_trace(std::string_view text);

/// Canonical rendering; parse_trace(render_trace(t)) == t.
std::string render_event(const ParametricEvent& e);
std::string render_trace(const ParametricTrace& trace);

/// Space-separated event names.
std::string join_events(const BaseTrace& trace);

/// τ↾θ: base events of those τ-events whose instance is ⊑ theta, in order.
BaseTrace slice_by_definition(const ParametricTrace& tau, const ParamInstance& theta);

/// Θ_τ: lub closure of every instance occurring in tau.
InstanceSet theta_of_trace(const ParametricTrace& tau);

}  // namespace pmon
