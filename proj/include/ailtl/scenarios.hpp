#pragma once

#include "ailtl/runtime.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ailtl {

// 64-bit linear congruential generator (Knuth's MMIX constants). Outputs
// the top 31 bits of the state so that every language can reproduce it:
//   state = state * 6364136223846793005 + 1442695040888963407
//   next  = state >> 33
class Lcg {
public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 33;
  }

  // Uniform in [lo, hi] by modulo reduction.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

struct ScenarioParams {
  // 0 selects the scenario's default size.
  std::size_t size = 0;
  std::uint64_t seed = 1;
  std::string variant;
  // Queue only: forced duplicate pushes; also drops the gating rules.
  std::size_t inject_duplicates = 0;
};

struct Scenario {
  std::string name;
  std::string program;
  std::string trace;
};

// queue, supply, battery, temperature, ethics, ambulance.
const std::vector<std::string>& scenario_names();
// Variants accepted by a scenario; the first is the default.
const std::vector<std::string>& scenario_variants(const std::string& name);

// Throws Error(InvalidArgument) on unknown names, variants or sizes.
Scenario generate(const std::string& name, const ScenarioParams& params);

// Synthetic cost-model workload: f identical unconditional ALWAYS rules over
// one Present reading per tick.
std::string bench_program(std::size_t f);
std::string bench_trace(Time ticks);
// Mean per-cycle metrics of one run.
CycleMetrics run_bench(std::size_t f, Time ticks);

}  // namespace ailtl
