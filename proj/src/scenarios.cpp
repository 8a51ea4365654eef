#include "ailtl/scenarios.hpp"

#include "ailtl/dsl.hpp"
#include "ailtl/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ailtl {

namespace {

std::string entry(std::size_t i) { return "e" + std::to_string(i); }

Scenario queue(const ScenarioParams& p) {
  const std::size_t n = p.size ? p.size : 100;
  const std::size_t k = p.inject_duplicates;
  if (k > 0 && (n > 300 || k >= n))
    throw Error(ErrorCode::InvalidArgument, "duplicates need at most 300 pushes and fewer duplicates than pushes");

  Lcg rng(p.seed);
  std::vector<std::int64_t> items(n);
  std::set<std::int64_t> used;
  for (auto& item : items) {
    item = rng.uniform(1, 300);
    // Injected runs control the duplicates exactly, so natural ones are redrawn.
    while (k > 0 && used.count(item)) item = rng.uniform(1, 300);
    used.insert(item);
  }
  std::set<std::size_t> forced;
  while (forced.size() < k) forced.insert(static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(n) - 1)));
  for (std::size_t pos : forced) {
    std::size_t src;
    do {
      src = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pos) - 1));
    } while (forced.count(src));
    items[pos] = items[src];
  }

  std::ostringstream prog;
  if (k == 0) {
    prog << "meta:\n"
         << "  solve_not(push(R,Q)) :- in_queue(_e,R).\n"
         << "  solve_not(assert(in_queue(_i,R))) :- in_queue(_e,R).\n\n";
  }
  prog << "expr:\n"
       << "  push_P+(_req,Q) : NEVER in_queue(E1,RX), in_queue(E2,RX), E1 \\= E2 ::: pop_A+(_e,Q)"
       << " DIV retract(in_queue(E2,RX)).\n";

  std::ostringstream tr;
  tr << "# queue: " << n << " pushes on q1, then FIFO pops of the accepted items\n";
  std::vector<std::size_t> accepted;
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Time t = static_cast<Time>(i) + 1;
    tr << t << " A push(" << items[i] << ",q1)\n";
    tr << t << " A assert(in_queue(" << entry(i + 1) << "," << items[i] << "))\n";
    if (seen.insert(items[i]).second) accepted.push_back(i);
  }
  Time t = static_cast<Time>(n) + 1;
  for (std::size_t i : accepted) {
    tr << t << " A pop(" << items[i] << ",q1)\n";
    tr << t << " A retract(in_queue(" << entry(i + 1) << "," << items[i] << "))\n";
    ++t;
  }
  return {"queue", prog.str(), tr.str()};
}

Scenario supply(const ScenarioParams& p) {
  const std::size_t supplies = p.size ? p.size : 3;
  const bool soft = p.variant == "soft";
  Lcg rng(p.seed);
  const char* suppliers[] = {"acme", "globex", "initech"};

  std::ostringstream prog;
  prog << "facts:\n  threshold(r,5).\n\n"
       << "expr:\n"
       << "  supply_P+(r,_s) : NEVER quantity_N(r,V), V < Th :: threshold(r,Th), consume_A(r,Q)"
       << " ::: consume_A+(r,_q)";
  if (soft) prog << " DIV reorder(r) | soft_limit_reached(r,V).\n";
  else prog << " DIV block(consume(r,Q)).\n";

  std::ostringstream tr;
  tr << "# supply: " << supplies << " supplies of r, then consumption until below threshold\n";
  std::int64_t quantity = 0;
  Time t = 1;
  for (std::size_t i = 0; i < supplies; ++i, ++t) {
    quantity += rng.uniform(3, 6);
    tr << t << " A supply(r," << suppliers[rng.uniform(0, 2)] << ")\n";
    tr << t << " N quantity(r," << quantity << ")\n";
  }
  // Consume until the stock crosses the threshold, then once more.
  t += 5;
  bool crossed = false;
  while (true) {
    const std::int64_t amount = rng.uniform(1, 3);
    quantity = std::max<std::int64_t>(0, quantity - amount);
    tr << t << " A consume(r," << amount << ")\n";
    tr << t << " N quantity(r," << quantity << ")\n";
    t += 2;
    if (crossed) break;
    crossed = quantity < 5;
  }
  return {"supply", prog.str(), tr.str()};
}

Scenario battery(const ScenarioParams& p) {
  const std::string variant = p.variant.empty() ? "normal" : p.variant;
  Lcg rng(p.seed);

  std::ostringstream prog;
  prog << "facts:\n"
       << "  low(20).\n"
       << "  extensive_usage_action(dry_water).\n"
       << "  extensive_usage_action(climb_stairs).\n\n"
       << "expr:\n"
       << "  recharge_battery_A : ALWAYS(0,360;10) charge_level_N(L), L > Low :: low(Low)"
       << " :::: extensive_usage_action(Act)*"
       << " DIV stop_robot_operation | alert_user_possible_fault_A || recharge_battery_G.\n\n"
       << "config:\n  end = 400.\n";

  std::ostringstream tr;
  tr << "# battery (" << variant << "): recharge at 5, six-hour watch of 360 ticks\n";
  tr << "5 A recharge_battery\n5 N charge_level(100)\n";
  const std::int64_t lo = variant == "lowcharge" ? 3 : 1;
  const std::int64_t hi = variant == "lowcharge" ? 5 : 2;
  std::int64_t charge = 100;
  const char* usage[] = {"vacuum", "sweep", "mop"};
  for (Time t = 12; t <= 400; t += 10) {
    std::string act = usage[rng.uniform(0, 2)];
    if (variant == "extensive" && t == 102) act = "dry_water";
    charge = std::max<std::int64_t>(0, charge - rng.uniform(lo, hi));
    tr << t << " A " << act << "\n";
    tr << t << " N charge_level(" << charge << ")\n";
  }
  return {"battery", prog.str(), tr.str()};
}

Scenario temperature(const ScenarioParams& p) {
  Lcg rng(p.seed);
  std::ostringstream prog;
  prog << "rules:\n"
       << "  ALWAYS(8:00,17:00;10) 19 <= T, T <= 21 :: temperature_N(T)"
       << " DIV modify_temperature(S), S IN {ext, gas, solar : less_expensive}.\n\n"
       << "costs:\n"
       << "  less_expensive(ext) = 3.\n"
       << "  less_expensive(gas) = 2.\n"
       << "  less_expensive(solar) = 1.\n";

  std::ostringstream tr;
  tr << "# temperature: a reading every 5 minutes from 7:00 to 18:00 (1 tick = 1 minute)\n";
  for (Time t = 420; t <= 1080; t += 5) {
    std::int64_t value = 19 + rng.uniform(0, 2);
    if (rng.uniform(0, 9) == 0) value = rng.uniform(0, 1) ? 23 : 17;
    if (t == 600) value = 17;
    tr << t << " N temperature(" << value << ")\n";
  }
  return {"temperature", prog.str(), tr.str()};
}

struct EthicsRow {
  const char* context;
  const char* role;
  const char* action;
  bool allowed;
  bool ethical;
};

// Who may do what, and whether it is ethical, per context and role.
constexpr EthicsRow kEthics[] = {
    {"video_game", "player", "shoot", true, true},
    {"video_game", "player", "shout", true, true},
    {"video_game", "player", "call_police", true, true},
    {"role_game", "player", "shoot", true, false},
    {"role_game", "player", "shout", true, true},
    {"role_game", "player", "call_police", true, true},
    {"reality", "citizen", "shoot", false, false},
    {"reality", "citizen", "shout", true, true},
    {"reality", "citizen", "call_police", true, true},
    {"reality", "police", "shoot", true, true},
    {"reality", "police", "shout", true, true},
    {"reality", "police", "call_police", false, false},
};

Scenario ethics(const ScenarioParams& p) {
  const std::size_t attempts = p.size ? p.size : 12;
  Lcg rng(p.seed);

  std::ostringstream prog;
  prog << "facts:\n";
  for (const auto& row : kEthics) {
    if (row.allowed) prog << "  allowed(" << row.context << "," << row.role << "," << row.action << ").\n";
    if (row.ethical) prog << "  ethical(" << row.context << "," << row.role << "," << row.action << ").\n";
  }
  prog << "\nmeta:\n"
       << "  solve(execute_action(Act)) :- context_N(C,R), allowed(C,R,Act), ethical(C,R,Act).\n"
       << "  solve_not(execute_action(Act)) :- context_N(C,_r), ethical_exception(C,Act).\n";

  std::ostringstream tr;
  tr << "# ethics: " << attempts << " attempted actions across contexts and roles\n";
  Time t = 1;
  const auto rows = static_cast<std::int64_t>(std::size(kEthics));
  for (std::size_t i = 0; i < attempts; ++i, t += 2) {
    const auto& row = kEthics[rng.uniform(0, rows - 1)];
    tr << t << " N context(" << row.context << "," << row.role << ")\n";
    tr << t << " A execute_action(" << row.action << ")\n";
  }
  tr << "# small children start watching the video game\n";
  tr << t << " A assert(ethical_exception(video_game,shoot))\n";
  tr << t << " N context(video_game,player)\n";
  tr << t << " A execute_action(shoot)\n";
  tr << t + 1 << " A execute_action(shout)\n";
  return {"ethics", prog.str(), tr.str()};
}

Scenario ambulance(const ScenarioParams& p) {
  const std::string variant = p.variant.empty() ? "blocked" : p.variant;
  Lcg rng(p.seed);

  std::ostringstream prog;
  prog << "expr:\n"
       << "  call_ambulance_A(D) : EVENTUALLY(0,60) arrived_N(D) :::: ambulance_blocked_E(D)"
       << " ||| alternative_transportation(T), T IN {elicopter, boat : faster_reach}.\n\n"
       << "costs:\n"
       << "  faster_reach(elicopter) = 12.\n"
       << "  faster_reach(boat) = 20.\n";

  const Time traffic = rng.uniform(5, 9);
  const Time blocked = rng.uniform(10, 20);
  const Time arrival = rng.uniform(30, 50);
  std::ostringstream tr;
  tr << "# ambulance (" << variant << "): call at 2, 60-tick deadline\n";
  tr << "2 A call_ambulance(hospital)\n";
  tr << traffic << " E traffic(hospital)\n";
  if (variant != "clear") tr << blocked << " E ambulance_blocked(hospital)\n";
  if (variant != "late") tr << arrival << " N arrived(hospital)\n";
  else tr << 70 << " N arrived(hospital)\n";
  return {"ambulance", prog.str(), tr.str()};
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"queue", "supply", "battery", "temperature", "ethics", "ambulance"};
  return names;
}

const std::vector<std::string>& scenario_variants(const std::string& name) {
  static const std::vector<std::string> plain = {"default"};
  static const std::vector<std::string> supply_v = {"block", "soft"};
  static const std::vector<std::string> battery_v = {"normal", "extensive", "lowcharge"};
  static const std::vector<std::string> ambulance_v = {"blocked", "clear", "late"};
  if (name == "supply") return supply_v;
  if (name == "battery") return battery_v;
  if (name == "ambulance") return ambulance_v;
  return plain;
}

Scenario generate(const std::string& name, const ScenarioParams& params) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorCode::InvalidArgument, "unknown scenario " + name);
  ScenarioParams p = params;
  const auto& variants = scenario_variants(name);
  if (p.variant.empty() || p.variant == "default") p.variant = variants.front();
  if (std::find(variants.begin(), variants.end(), p.variant) == variants.end())
    throw Error(ErrorCode::InvalidArgument, "scenario " + name + " has no variant " + p.variant);
  if (p.inject_duplicates > 0 && name != "queue")
    throw Error(ErrorCode::InvalidArgument, "duplicates can only be injected into the queue scenario");

  if (name == "queue") return queue(p);
  if (name == "supply") return supply(p);
  if (name == "battery") return battery(p);
  if (name == "temperature") return temperature(p);
  if (name == "ethics") return ethics(p);
  return ambulance(p);
}

std::string bench_program(std::size_t f) {
  std::string out = "rules:\n";
  for (std::size_t i = 0; i < f; ++i) out += "  ALWAYS level_N(X), X >= 0 DIV alarm(X).\n";
  return out;
}

std::string bench_trace(Time ticks) {
  std::string out;
  for (Time t = 0; t < ticks; ++t) out += std::to_string(t) + " N level(" + std::to_string(t % 100) + ")\n";
  return out;
}

CycleMetrics run_bench(std::size_t f, Time ticks) {
  EngineConfig cfg;
  cfg.metrics = true;
  Report r = run_program(parse_program(bench_program(f)), parse_trace(bench_trace(ticks)), cfg);
  return average(r.metrics);
}

}  // namespace ailtl
