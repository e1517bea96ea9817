#pragma once

// Seeded differential testing: online slicer against the definitional slice,
// table algorithm against the optimized algorithm, and the optimized algorithm
// against the base monitor run on each slice.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "pmon/monitor.hpp"
#include "pmon/trace.hpp"

namespace pmon {

struct SelfcheckOptions {
  std::uint64_t seed = 0;
  std::size_t counts = 1000;
  std::size_t max_events = 50;
  std::size_t off_theta_queries = 10;
  std::size_t cap = kDefaultEnumerationCap;
  // Drawn from when set; otherwise a fresh random spec is built per trace.
  const MonitorSpec* spec = nullptr;
  // Mutation hooks, for demonstrating that the checks have teeth.
  bool mutate_no_snapshot = false;
  bool mutate_skip_join = false;
};

enum class CheckKind { slicer_vs_oracle, b_vs_c, c_vs_reference };

std::string_view to_string(CheckKind kind);

struct Counterexample {
  CheckKind check;
  std::string message;
  MonitorSpec spec;
  ParametricTrace trace;  // minimized
};

struct SelfcheckResult {
  std::size_t total = 0;
  std::size_t slicer_ok = 0;
  std::size_t bc_ok = 0;
  std::size_t reference_ok = 0;
  std::optional<Counterexample> first_failure;

  bool all_passed() const {
    return slicer_ok == total && bc_ok == total && reference_ok == total;
  }
};

/// `ok: N/N A=oracle, N/N B=C, N/N C=ref`, or `FAIL: ...` when any check failed.
std::string summary_line(const SelfcheckResult& r);

SelfcheckResult run_selfcheck(const SelfcheckOptions& options);

/// Empty on success, otherwise a description of the first mismatch.
std::string check_slicer(const ParametricTrace& trace, std::mt19937_64& rng,
                         const SelfcheckOptions& options);
std::string check_b_vs_c(const MonitorSpec& spec, const ParametricTrace& trace,
                         const SelfcheckOptions& options);
std::string check_c_vs_reference(const MonitorSpec& spec, const ParametricTrace& trace,
                                 std::mt19937_64& rng, const SelfcheckOptions& options);

/// Random spec over {begin,end,acquire,release} and parameters {a,b,c}; the
/// monitor kind is chosen by `kind`.
MonitorSpec random_spec(std::mt19937_64& rng, MonitorKind kind);

/// Random trace conforming to `spec`: uniform event names, each event binding a
/// random subset of its declared parameters, values from per-parameter pools
/// of 1 to 3 values.
ParametricTrace random_trace(const MonitorSpec& spec, std::mt19937_64& rng, std::size_t max_events);

}  // namespace pmon
