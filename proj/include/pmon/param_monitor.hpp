#pragma once

// Parametric monitoring: the straightforward table algorithm (B), the
// optimized online algorithm with the U index (C), and the definitional
// reference both are checked against.

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmon/lattice.hpp"
#include "pmon/monitor.hpp"
#include "pmon/trace.hpp"

namespace pmon {

struct VerdictReport {
  std::size_t event_index = 0;  // 1-based
  Verdict verdict;
  ParamInstance instance;
  ParametricEvent event;

  friend bool operator==(const VerdictReport&, const VerdictReport&) = default;
};

/// `<event_index>\t<verdict>\t<instance>\t<event name>`
std::string render_report(const VerdictReport& r);

/// Per-step instrumentation.
struct StepStats {
  std::size_t touched = 0;        // monitor states stepped
  std::size_t compat_checks = 0;  // compatibility tests performed
  std::size_t full_scans = 0;     // scans over the whole instance domain
  std::size_t created = 0;        // instances newly defined
};

struct EngineOptions {
  std::size_t cap = kDefaultEnumerationCap;
  // Report every trigger-set assignment instead of only verdict changes.
  bool report_every = false;
  bool validate_events = true;
};

using StateTable = std::map<ParamInstance, MonitorState, InstanceOrder>;
using VerdictTable = std::map<ParamInstance, Verdict, InstanceOrder>;

/// Table algorithm: every event scans Θ for compatible instances.
/// The engine keeps a pointer to `spec`, which must outlive it.
class BMonitor {
 public:
  explicit BMonitor(const MonitorSpec& spec, EngineOptions options = {});

  std::vector<VerdictReport> step(const ParametricEvent& event);

  /// γ(Δ(max(theta]_Θ)): the parametric monitor's output at any instance.
  Verdict verdict_for(const ParamInstance& theta) const;

  const StateTable& delta() const { return delta_; }
  const VerdictTable& gamma() const { return gamma_; }
  const InstanceSet& theta() const { return theta_; }
  const StepStats& last_stats() const { return last_; }
  std::size_t monitor_steps() const { return monitor_steps_; }
  std::size_t events_processed() const { return processed_; }

 private:
  const MonitorSpec* spec_;
  EngineOptions options_;
  StateTable delta_;
  VerdictTable gamma_;
  InstanceSet theta_;
  StepStats last_;
  std::size_t monitor_steps_ = 0;
  std::size_t processed_ = 0;
};

struct CMonitorOptions : EngineOptions {
  // Testing hook: when false the compatible-join phase is skipped.
  bool join_phase = true;
  // Verify the U-index invariant after every define_to (quadratic).
#ifdef NDEBUG
  bool check_invariants = false;
#else
  bool check_invariants = true;
#endif
};

/// Optimized online algorithm. Θ is implicit as Dom(Δ); U(θ) lists the defined
/// instances strictly more informative than θ. Keeps a pointer to `spec`.
class CMonitor {
 public:
  explicit CMonitor(const MonitorSpec& spec, CMonitorOptions options = {});

  std::vector<VerdictReport> step(const ParametricEvent& event);

  /// Δ(theta) ← Δ(source) and theta added to U(t) for every t ⊏ theta.
  /// Requires Δ defined at `source`, undefined at `theta`, and source ⊑ theta.
  void define_to(const ParamInstance& theta, const ParamInstance& source);

  Verdict verdict_for(const ParamInstance& theta) const;

  bool defined(const ParamInstance& theta) const { return delta_.contains(theta); }
  const std::vector<ParamInstance>& more_informative(const ParamInstance& theta) const;

  /// U(θ) = {θ' ∈ Dom(Δ) : θ ⊏ θ'} for every θ.
  bool u_index_consistent() const;

  StateTable delta() const;
  VerdictTable gamma() const;
  std::size_t instance_count() const { return delta_.size(); }
  const StepStats& last_stats() const { return last_; }
  std::size_t monitor_steps() const { return monitor_steps_; }
  std::size_t events_processed() const { return processed_; }

 private:
  const MonitorSpec* spec_;
  CMonitorOptions options_;
  std::unordered_map<ParamInstance, MonitorState, InstanceHash> delta_;
  std::unordered_map<ParamInstance, std::vector<ParamInstance>, InstanceHash> more_;
  std::unordered_map<ParamInstance, Verdict, InstanceHash> gamma_;
  StepStats last_;
  std::size_t monitor_steps_ = 0;
  std::size_t processed_ = 0;
};

struct BRun {
  StateTable delta;
  VerdictTable gamma;
  std::vector<VerdictReport> reports;
};

/// Runs the table algorithm over a whole trace.
BRun bmon_run(const MonitorSpec& spec, const ParametricTrace& tau, EngineOptions options = {});

/// Steps the base monitor on exactly the events whose instance is ⊑ theta.
Verdict parametric_monitor_reference(const MonitorSpec& spec, const ParametricTrace& tau,
                                     const ParamInstance& theta);

}  // namespace pmon
