// pmon: parametric trace slicing and monitoring from the command line.
//
// Exit codes: 0 success / no trigger fired, 1 input or spec error,
// 2 enumeration cap exceeded, 3 a monitored verdict fired, 4 selfcheck mismatch.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmon/bench.hpp"
#include "pmon/error.hpp"
#include "pmon/param_monitor.hpp"
#include "pmon/selfcheck.hpp"
#include "pmon/slicer.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitCap = 2;
constexpr int kExitVerdict = 3;
constexpr int kExitSelfcheck = 4;

struct RunConfig {
  std::string spec_path;
  std::string trace_path = "-";
  std::string algo = "c";
  std::string instance;
  bool has_instance = false;
  std::uint64_t seed = 0;
  std::size_t counts = 1000;
  std::size_t max_events = 50;
  std::size_t cap = pmon::kDefaultEnumerationCap;
  bool report_every = false;
  bool print_final = false;
  std::string counterexample = "selfcheck-counterexample.trace";
  bool mutate_skip_join = false;
  bool mutate_no_snapshot = false;
  std::string workload = "all";
  std::vector<std::size_t> sizes{1000, 10000};
  std::string bench_algo = "both";
};

// Owns the file stream when reading from a path; borrows std::cin for "-".
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cin;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw pmon::ParseError(0, "cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_;
};

std::string read_all(const std::string& path) {
  Input in(path);
  std::ostringstream ss;
  ss << in.get().rdbuf();
  return ss.str();
}

int cmd_slice(const RunConfig& cfg) {
  Input in(cfg.trace_path);
  pmon::TraceReader reader(in.get());
  pmon::SliceTable table({cfg.cap, true});
  while (auto e = reader.next()) table.step(*e);

  if (cfg.has_instance) {
    std::cout << pmon::join_events(table.lookup(pmon::ParamInstance::parse(cfg.instance))) << '\n';
  } else {
    for (const auto& theta : table.theta())
      std::cout << theta.key() << '\t' << pmon::join_events(table.slice_at(theta)) << '\n';
  }
  return 0;
}

template <typename Engine>
int drive_monitor(Engine& engine, pmon::TraceReader& reader, const RunConfig& cfg) {
  bool fired = false;
  while (auto e = reader.next()) {
    for (const auto& r : engine.step(*e)) {
      std::cout << pmon::render_report(r) << '\n';
      fired = true;
    }
  }
  if (cfg.print_final)
    for (const auto& [theta, state] : engine.delta())
      std::cout << "final\t" << pmon::to_string(engine.verdict_for(theta)) << '\t' << theta.key() << '\n';
  if (cfg.has_instance)
    std::cout << "query\t" << pmon::to_string(engine.verdict_for(pmon::ParamInstance::parse(cfg.instance)))
              << '\t' << pmon::ParamInstance::parse(cfg.instance).key() << '\n';
  return fired ? kExitVerdict : 0;
}

int cmd_monitor(const RunConfig& cfg) {
  const pmon::MonitorSpec spec = pmon::parse_property_spec(read_all(cfg.spec_path));
  Input in(cfg.trace_path);
  pmon::TraceReader reader(in.get());
  if (cfg.algo == "b") {
    pmon::EngineOptions options;
    options.cap = cfg.cap;
    options.report_every = cfg.report_every;
    pmon::BMonitor engine(spec, options);
    return drive_monitor(engine, reader, cfg);
  }
  pmon::CMonitorOptions options;
  options.cap = cfg.cap;
  options.report_every = cfg.report_every;
  options.check_invariants = false;
  pmon::CMonitor engine(spec, options);
  return drive_monitor(engine, reader, cfg);
}

int cmd_selfcheck(const RunConfig& cfg) {
  std::optional<pmon::MonitorSpec> spec;
  if (!cfg.spec_path.empty()) spec = pmon::parse_property_spec(read_all(cfg.spec_path));

  pmon::SelfcheckOptions options;
  options.seed = cfg.seed;
  options.counts = cfg.counts;
  options.max_events = cfg.max_events;
  options.cap = cfg.cap;
  options.spec = spec ? &*spec : nullptr;
  options.mutate_skip_join = cfg.mutate_skip_join;
  options.mutate_no_snapshot = cfg.mutate_no_snapshot;

  const auto result = pmon::run_selfcheck(options);
  std::cout << pmon::summary_line(result) << '\n';
  if (result.all_passed()) return 0;

  const auto& cx = *result.first_failure;
  std::ofstream trace_out(cfg.counterexample);
  trace_out << "# " << pmon::to_string(cx.check) << ": " << cx.message << '\n'
            << pmon::render_trace(cx.trace);
  std::ofstream spec_out(cfg.counterexample + ".spec");
  spec_out << pmon::render_property_spec(cx.spec);
  std::cerr << "counterexample (" << cx.trace.size() << " events) written to " << cfg.counterexample
            << " and " << cfg.counterexample << ".spec\n"
            << pmon::to_string(cx.check) << ": " << cx.message << '\n';
  return kExitSelfcheck;
}

int cmd_bench(const RunConfig& cfg) {
  std::cout << pmon::bench::kCsvHeader << '\n';
  std::vector<std::string> algos;
  if (cfg.bench_algo == "both") algos = {"b", "c"};
  else algos = {cfg.bench_algo};

  auto run = [&](const std::string& name, const pmon::MonitorSpec& spec, auto make) {
    for (std::size_t size : cfg.sizes) {
      if (size == 0) continue;
      const auto trace = make(size, cfg.seed);
      for (const auto& algo : algos)
        std::cout << pmon::bench::to_csv(pmon::bench::measure(name, spec, trace, algo)) << '\n';
    }
  };
  if (cfg.workload == "iterator" || cfg.workload == "all")
    run("iterator", pmon::bench::iterator_spec(), pmon::bench::iterator_workload);
  if (cfg.workload == "adversarial" || cfg.workload == "all")
    run("adversarial", pmon::bench::adversarial_spec(), pmon::bench::adversarial_workload);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric trace slicing and monitoring"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* slice = app.add_subcommand("slice", "Slice a parametric trace");
  slice->add_option("--trace", cfg.trace_path, "Trace file, '-' for stdin")->required();
  slice->add_option("--instance", cfg.instance, "Print only this slice, e.g. a=a1,b=b1");
  slice->add_option("--cap", cfg.cap, "Parameter enumeration cap");

  auto* monitor = app.add_subcommand("monitor", "Monitor a trace against a property spec");
  monitor->add_option("--spec", cfg.spec_path, "Property spec file")->required();
  monitor->add_option("--trace", cfg.trace_path, "Trace file, '-' for stdin")->required();
  monitor->add_option("--algo", cfg.algo, "b (table scan) or c (indexed)")
      ->check(CLI::IsMember({"b", "c"}));
  monitor->add_flag("--report-every", cfg.report_every, "Report every trigger assignment");
  monitor->add_flag("--final", cfg.print_final, "Print the final verdict table");
  monitor->add_option("--instance", cfg.instance, "Print the final verdict for this instance");
  monitor->add_option("--cap", cfg.cap, "Parameter enumeration cap");

  auto* selfcheck = app.add_subcommand("selfcheck", "Differential checks on random traces");
  selfcheck->add_option("--seed", cfg.seed, "RNG seed")->required();
  selfcheck->add_option("--counts", cfg.counts, "Number of random traces");
  selfcheck->add_option("--max-events", cfg.max_events, "Maximum trace length");
  selfcheck->add_option("--spec", cfg.spec_path, "Draw traces for this spec instead of random ones");
  selfcheck->add_option("--counterexample", cfg.counterexample, "Where to write a failing trace");
  selfcheck->add_option("--cap", cfg.cap, "Parameter enumeration cap");
  selfcheck->add_flag("--mutate-skip-join", cfg.mutate_skip_join, "Testing: skip the join phase of C")
      ->group("Mutation testing");
  selfcheck->add_flag("--mutate-no-snapshot", cfg.mutate_no_snapshot,
                      "Testing: slicer reads the live table")
      ->group("Mutation testing");

  auto* bench = app.add_subcommand("bench", "Synthetic workload timings as CSV");
  bench->add_option("--workload", cfg.workload, "iterator, adversarial or all")
      ->check(CLI::IsMember({"iterator", "adversarial", "all"}));
  bench->add_option("--sizes", cfg.sizes, "Trace sizes")->delimiter(',');
  bench->add_option("--algo", cfg.bench_algo, "b, c or both")->check(CLI::IsMember({"b", "c", "both"}));
  bench->add_option("--seed", cfg.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);
  cfg.has_instance = !cfg.instance.empty() || (slice->parsed() && slice->count("--instance")) ||
                     (monitor->parsed() && monitor->count("--instance"));

  try {
    if (slice->parsed()) return cmd_slice(cfg);
    if (monitor->parsed()) return cmd_monitor(cfg);
    if (selfcheck->parsed()) return cmd_selfcheck(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
  } catch (const pmon::CapExceeded& e) {
    std::cerr << "pmon: " << e.what() << '\n';
    return kExitCap;
  } catch (const pmon::Error& e) {
    std::cerr << "pmon: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
