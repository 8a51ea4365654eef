#pragma once

#include "ailtl/dsl.hpp"
#include "ailtl/events.hpp"
#include "ailtl/evolutionary.hpp"
#include "ailtl/kb.hpp"
#include "ailtl/metagate.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ailtl {

struct EngineConfig {
  Time default_frequency = 1;
  std::int64_t ticks_per_minute = 1;
  // Last tick to run; the run never stops before the last trace event.
  std::optional<Time> end;
  std::size_t emission_cap = 1000;
  // Route action events through the solve/solve_not rules.
  bool gating = true;
  bool metrics = false;
  std::map<std::string, std::size_t> retention;
};

// Engine defaults overridden by the program's config section.
EngineConfig config_for(const Program& p);

// Per-cycle cost split. Phase figures are per-expression means so that
// total ~ f*m + f*(if_eval + max_eval + if_viol_or_broken). Nanoseconds.
struct CycleMetrics {
  Time tick = 0;
  std::size_t f = 0;
  double m = 0;
  double if_eval = 0;
  double max_eval = 0;
  double if_viol_or_broken = 0;
  double total = 0;
};

// Mean over cycles.
CycleMetrics average(const std::vector<CycleMetrics>& cycles);

struct TransitionRecord {
  Time time = 0;
  std::string id;
  std::size_t instance = 0;
  ExprStatus from = ExprStatus::Dormant;
  ExprStatus to = ExprStatus::Dormant;
  std::string cause;

  friend bool operator==(const TransitionRecord&, const TransitionRecord&) = default;
};

struct EmissionRecord {
  Time time = 0;
  std::string id;
  std::size_t instance = 0;
  Provenance provenance = Provenance::Repair;
  Emission emission;

  friend bool operator==(const EmissionRecord&, const EmissionRecord&) = default;
};

struct GateRecord {
  Time time = 0;
  EventKind kind = EventKind::Action;
  Term payload;
  // Ungated actions (gating disabled) are logged as NoRulesApply.
  GateDecision decision = GateDecision::NoRulesApply;

  friend bool operator==(const GateRecord&, const GateRecord&) = default;
};

struct WarningRecord {
  Time time = 0;
  std::string id;
  std::size_t instance = 0;
  std::string message;

  friend bool operator==(const WarningRecord&, const WarningRecord&) = default;
};

struct FinalRecord {
  std::string id;
  std::size_t instance = 0;
  ExprStatus status = ExprStatus::Dormant;
  Binding binding;
  std::size_t evaluations = 0;

  friend bool operator==(const FinalRecord&, const FinalRecord&) = default;
};

struct Report {
  Time end = 0;
  std::vector<TransitionRecord> transitions;
  std::vector<EmissionRecord> emissions;
  std::vector<GateRecord> gates;
  std::vector<WarningRecord> warnings;
  std::vector<FinalRecord> finals;
  std::vector<CycleMetrics> metrics;

  std::size_t count(ExprStatus s) const;
  std::size_t blocked() const;
  // Final statuses that count as violations for the exit code.
  std::size_t violations() const { return count(ExprStatus::Violated); }
};

// Stable line format, see README. Metrics are appended only when present.
std::string render(const Report& r, bool with_metrics = false);

// Single logical event loop over ticks 0..end. Each tick ingests the
// reactions emitted during the previous tick, then the trace events stamped
// with it, then steps every live expression instance in declaration order
// (reactive rules first).
class Engine {
public:
  Engine(const Program& program, EngineConfig cfg);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // Trace timestamps must be non-decreasing.
  Report run(const std::vector<Event>& trace);

  const FactBase& kb() const noexcept { return kb_; }
  const History& history() const noexcept { return history_; }
  const StateSequence& states() const noexcept { return states_; }

private:
  struct Slot {
    std::string id;
    std::size_t expr;
    bool reactive;
    std::vector<ExprInstance> instances;
  };

  void ingest(const Event& e);
  void apply_effect(const Event& e);
  void mirror(const Event& e);
  void check(Time now);

  Program program_;
  EngineConfig cfg_;
  std::vector<EvolutionaryExpr> exprs_;
  std::vector<Slot> slots_;
  FactBase kb_;
  History history_;
  StateSequence states_;
  CostRegistry costs_;
  Time now_ = 0;
  bool dirty_ = false;
  std::vector<Emission> pending_;
  std::map<std::pair<std::string, std::size_t>, Term> past_mirror_;
  Report report_;
};

// Builds an engine and runs it once.
Report run_program(const Program& program, const std::vector<Event>& trace, const EngineConfig& cfg);

}  // namespace ailtl
