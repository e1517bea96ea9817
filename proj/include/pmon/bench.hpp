#pragma once

// Synthetic workloads for per-event cost measurements.

#include <cstdint>
#include <string>
#include <vector>

#include "pmon/monitor.hpp"
#include "pmon/trace.hpp"

namespace pmon::bench {

/// Iterator-style: 4 collections and 16 iterators bound once, then many
/// next/updateColl events over that fixed population.
MonitorSpec iterator_spec();
ParametricTrace iterator_workload(std::size_t events, std::uint64_t seed);

/// Adversarial: mostly fresh ⟨a,b⟩ pairs, each incompatible with every earlier
/// pair, so the instance count grows linearly in the trace length.
MonitorSpec adversarial_spec();
ParametricTrace adversarial_workload(std::size_t events, std::uint64_t seed);

struct Row {
  std::string workload;
  std::size_t trace_size = 0;
  std::string algo;
  double events_per_second = 0;
  std::size_t peak_instances = 0;
  std::size_t monitor_steps = 0;
};

inline constexpr const char* kCsvHeader =
    "workload,trace_size,algo,events_per_second,peak_instances,monitor_steps";

std::string to_csv(const Row& row);

/// Runs `algo` ("b" or "c") over `trace`.
Row measure(const std::string& workload, const MonitorSpec& spec, const ParametricTrace& trace,
            const std::string& algo);

}  // namespace pmon::bench
