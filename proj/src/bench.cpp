#include "pmon/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "pmon/error.hpp"
#include "pmon/param_monitor.hpp"

namespace pmon::bench {

MonitorSpec iterator_spec() {
  return parse_property_spec(
      "property UnsafeIter\n"
      "params: c, i\n"
      "event createIter(c, i)\n"
      "event next(i)\n"
      "event updateColl(c)\n"
      "monitor: regex\n"
      "pattern: createIter next* updateColl+ next\n"
      "report: match\n");
}

ParametricTrace iterator_workload(std::size_t events, std::uint64_t seed) {
  constexpr std::size_t kCollections = 4;
  constexpr std::size_t kIterators = 16;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_iter(0, kIterators - 1);
  std::uniform_int_distribution<std::size_t> pick_coll(0, kCollections - 1);
  std::uniform_int_distribution<int> percent(0, 99);

  auto coll = [](std::size_t k) { return "c" + std::to_string(k % kCollections + 1); };
  auto iter = [](std::size_t k) { return "i" + std::to_string(k + 1); };

  ParametricTrace trace;
  trace.reserve(events);
  for (std::size_t k = 0; k < kIterators && trace.size() < events; ++k)
    trace.push_back({"createIter", ParamInstance{{"c", coll(k)}, {"i", iter(k)}}});
  while (trace.size() < events) {
    int p = percent(rng);
    if (p < 90) {
      trace.push_back({"next", ParamInstance{{"i", iter(pick_iter(rng))}}});
    } else if (p < 97) {
      trace.push_back({"updateColl", ParamInstance{{"c", "c" + std::to_string(pick_coll(rng) + 1)}}});
    } else {
      std::size_t k = pick_iter(rng);
      trace.push_back({"createIter", ParamInstance{{"c", coll(k)}, {"i", iter(k)}}});
    }
  }
  return trace;
}

MonitorSpec adversarial_spec() {
  return parse_property_spec(
      "property Fresh\n"
      "params: a, b\n"
      "event pair(a, b)\n"
      "event touch(a)\n"
      "monitor: ratio\n"
      "success: touch\n"
      "report:\n");
}

ParametricTrace adversarial_workload(std::size_t events, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> percent(0, 99);
  ParametricTrace trace;
  trace.reserve(events);
  std::size_t pairs = 0;
  while (trace.size() < events) {
    if (pairs == 0 || percent(rng) < 80) {
      ++pairs;
      trace.push_back({"pair", ParamInstance{{"a", "a" + std::to_string(pairs)},
                                             {"b", "b" + std::to_string(pairs)}}});
    } else {
      std::uniform_int_distribution<std::size_t> old(1, pairs);
      trace.push_back({"touch", ParamInstance{{"a", "a" + std::to_string(old(rng))}}});
    }
  }
  return trace;
}

std::string to_csv(const Row& row) {
  char rate[64];
  std::snprintf(rate, sizeof rate, "%.1f", row.events_per_second);
  return row.workload + "," + std::to_string(row.trace_size) + "," + row.algo + "," + rate + "," +
         std::to_string(row.peak_instances) + "," + std::to_string(row.monitor_steps);
}

Row measure(const std::string& workload, const MonitorSpec& spec, const ParametricTrace& trace,
            const std::string& algo) {
  Row row{workload, trace.size(), algo, 0, 0, 0};
  const auto start = std::chrono::steady_clock::now();
  if (algo == "b") {
    BMonitor m(spec);
    for (const auto& e : trace) m.step(e);
    row.peak_instances = m.delta().size();
    row.monitor_steps = m.monitor_steps();
  } else if (algo == "c") {
    CMonitorOptions options;
    options.check_invariants = false;
    CMonitor m(spec, options);
    for (const auto& e : trace) m.step(e);
    row.peak_instances = m.instance_count();
    row.monitor_steps = m.monitor_steps();
  } else {
    throw PreconditionError("unknown algorithm '" + algo + "'");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.events_per_second = seconds > 0 ? static_cast<double>(trace.size()) / seconds : 0.0;
  return row;
}

}  // namespace pmon::bench
