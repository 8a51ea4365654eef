// Command-line front end: run, scenario, bench, check.
//
// Exit codes: 0 no violations (or the command succeeded), 1 violations
// present, 2 usage, parse or engine error.

#include "ailtl/dsl.hpp"
#include "ailtl/error.hpp"
#include "ailtl/runtime.hpp"
#include "ailtl/scenarios.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kFailure = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ailtl::Error(ailtl::ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ailtl::Error(ailtl::ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

// A parse error with its file, printed as `path:line:col: message`.
struct LocatedError : std::runtime_error {
  LocatedError(const std::string& path, const ailtl::ParseError& e)
      : std::runtime_error(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                           e.message()) {}
};

template <typename Fn>
auto parse_file(const std::string& path, Fn fn) {
  std::string text = slurp(path);
  try {
    return fn(text);
  } catch (const ailtl::ParseError& e) {
    throw LocatedError(path, e);
  }
}

ailtl::Program load_program(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return ailtl::parse_program(t); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A-ILTL runtime monitor"};
  app.require_subcommand(1);

  std::string program_path, trace_path, report_path;
  bool metrics = false, no_gate = false;
  std::optional<ailtl::Time> end;
  auto* run = app.add_subcommand("run", "Run a program over a trace and report");
  run->add_option("--program", program_path, "Program file (.ailtl)")->required();
  run->add_option("--trace", trace_path, "Trace file")->required();
  run->add_option("--report", report_path, "Write the report here instead of stdout");
  run->add_flag("--metrics", metrics, "Append per-cycle cost metrics");
  run->add_flag("--no-gate", no_gate, "Record actions without consulting solve/solve_not rules");
  run->add_option("--end", end, "Run at least up to this tick");

  std::string scenario_name, out_dir, variant;
  std::size_t size = 0, inject = 0;
  std::uint64_t seed = 1;
  auto* scenario = app.add_subcommand("scenario", "Write a generated program and trace");
  scenario->add_option("name", scenario_name, "queue|supply|battery|temperature|ethics|ambulance")->required();
  scenario->add_option("--size", size, "Scenario size (0 = default)");
  scenario->add_option("--seed", seed, "LCG seed");
  scenario->add_option("--variant", variant, "Scenario variant");
  scenario->add_option("--out", out_dir, "Directory for <name>.ailtl and <name>.trace (stdout if absent)");
  scenario->add_flag("--inject-duplicate", inject, "Queue only: force a duplicate push (repeatable), ungated");

  std::size_t exprs = 10, repeat = 1;
  ailtl::Time ticks = 100;
  auto* bench = app.add_subcommand("bench", "Measure per-cycle cost for f expressions");
  bench->add_option("--exprs", exprs, "Number of expressions f")->required();
  bench->add_option("--ticks", ticks, "Ticks per run")->required();
  bench->add_option("--repeat", repeat, "Runs");

  auto* check = app.add_subcommand("check", "Parse and validate a program");
  check->add_option("--program", program_path, "Program file (.ailtl)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    if (*run) {
      ailtl::Program prog = load_program(program_path);
      auto trace = parse_file(trace_path, [](const std::string& t) { return ailtl::parse_trace(t); });
      ailtl::EngineConfig cfg = ailtl::config_for(prog);
      cfg.gating = !no_gate;
      cfg.metrics = metrics;
      if (end) cfg.end = std::max(*end, cfg.end.value_or(0));
      ailtl::Report report = ailtl::run_program(prog, trace, cfg);
      std::string text = ailtl::render(report, metrics);
      if (report_path.empty()) std::cout << text;
      else spill(report_path, text);
      std::cerr << report.violations() << " violation(s)\n";
      return report.violations() > 0 ? kViolations : kOk;
    }
    if (*scenario) {
      ailtl::ScenarioParams p;
      p.size = size;
      p.seed = seed;
      p.variant = variant;
      p.inject_duplicates = inject;
      ailtl::Scenario s = ailtl::generate(scenario_name, p);
      if (out_dir.empty()) {
        std::cout << s.program << "\n" << s.trace;
      } else {
        std::filesystem::create_directories(out_dir);
        spill(std::filesystem::path(out_dir) / (s.name + ".ailtl"), s.program);
        spill(std::filesystem::path(out_dir) / (s.name + ".trace"), s.trace);
      }
      return kOk;
    }
    if (*bench) {
      std::cout << "f,m,if_eval,max_eval,if_viol_or_broken,total\n";
      for (std::size_t i = 0; i < repeat; ++i) {
        ailtl::CycleMetrics m = ailtl::run_bench(exprs, ticks);
        std::cout << m.f << ',' << m.m << ',' << m.if_eval << ',' << m.max_eval << ',' << m.if_viol_or_broken << ','
                  << m.total << '\n';
      }
      return kOk;
    }
    ailtl::Program prog = load_program(program_path);
    std::cout << "ok: " << prog.facts.size() << " facts, " << prog.meta.size() << " meta rules, " << prog.rules.size()
              << " rules, " << prog.exprs.size() << " expressions\n";
    return kOk;
  } catch (const LocatedError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const ailtl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kFailure;
}
