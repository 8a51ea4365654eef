#pragma once

#include "ailtl/events.hpp"
#include "ailtl/kb.hpp"
#include "ailtl/patterns.hpp"
#include "ailtl/temporal.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ailtl {

// pre : tau ::: future :::: breaking DIV repair | eta1 || eta2 ||| eta3
struct EvolutionaryExpr {
  PatternSeq pre;
  ContextualFormula tau;
  PatternSeq future;
  PatternSeq breaking;
  std::optional<Reaction> repair;
  std::optional<Term> eta1;
  std::optional<Term> eta2;
  std::optional<Reaction> eta3;

  friend bool operator==(const EvolutionaryExpr&, const EvolutionaryExpr&) = default;
};

// A reactive rule behaves as an expression with no event sequences whose
// repair is the reaction.
EvolutionaryExpr as_expression(const ReactiveRule& rule);

enum class ExprStatus : std::uint8_t {
  Dormant,
  Armed,
  Holding,
  Fulfilled,
  Violated,
  Broken,
  Disabled,
  // Reported only by final_report for open-ended intervals.
  FulfilledSoFar,
};

const char* to_string(ExprStatus s);
bool is_terminal(ExprStatus s);
// The declared transition graph.
bool is_allowed_transition(ExprStatus from, ExprStatus to);

enum class Provenance : std::uint8_t { Repair, Eta1, Eta2, Eta3, Reactive };

const char* to_string(Provenance p);

struct StatusChange {
  Time time = 0;
  ExprStatus from = ExprStatus::Dormant;
  ExprStatus to = ExprStatus::Dormant;
  std::string cause;
};

struct Effect {
  Provenance provenance = Provenance::Repair;
  Emission emission;
};

struct StepResult {
  std::vector<StatusChange> changes;
  std::vector<Effect> effects;
  std::vector<std::string> warnings;
  // Wall-clock split of the step, filled only when timing is requested:
  // deciding whether to evaluate, evaluating tau, dispatching reactions.
  double if_eval_ns = 0;
  double eval_ns = 0;
  double viol_or_broken_ns = 0;
};

// Everything a step reads. The store and history are the current snapshot.
struct StepContext {
  const History& history;
  const FactBase& kb;
  const CostRegistry& costs;
  Time now = 0;
  Time default_frequency = 1;
  std::int64_t ticks_per_minute = 1;
  bool timed = false;
};

// One live instance of an expression.
//
// Intervals of an expression with an empty precondition are absolute engine
// time; otherwise they are offsets from the arming tick.
class ExprInstance {
public:
  // Scans the history for the precondition from `since` on.
  ExprInstance(const EvolutionaryExpr& expr, Time since, bool reactive = false);

  StepResult step(const StepContext& ctx);

  // Final status at the end of a run: open ALWAYS/NEVER instances become
  // FulfilledSoFar, open EVENTUALLY ones keep their status.
  ExprStatus final_report(Time end) const;

  ExprStatus status() const noexcept { return status_; }
  // Arming binding, extended with the witness once a verdict is reached.
  const Binding& binding() const noexcept { return binding_; }
  Time since() const noexcept { return since_; }
  std::optional<Time> armed_at() const noexcept { return armed_at_; }
  const std::optional<ResolvedInterval>& interval() const noexcept { return interval_; }
  std::size_t evaluations() const noexcept { return evaluations_; }
  const std::vector<Time>& evaluated_at() const noexcept { return evaluated_at_; }
  const EvolutionaryExpr& expr() const noexcept { return *expr_; }

  // Whether a fresh instance may take over after this one terminated.
  bool can_rearm(Time now) const;

private:
  void change(StepResult& out, Time t, ExprStatus to, std::string cause);
  void arm(StepResult& out, const StepContext& ctx, Binding b, std::string cause);
  void violate(StepResult& out, const StepContext& ctx, const Binding& b, std::string cause);
  void emit_atom(StepResult& out, Provenance p, const Term& atom, const Binding& b) const;
  void emit_reaction(StepResult& out, const StepContext& ctx, Provenance p, const Reaction& r,
                     const Binding& b) const;

  const EvolutionaryExpr* expr_;
  bool reactive_;
  Time since_;
  ExprStatus status_ = ExprStatus::Dormant;
  Binding binding_;
  std::optional<Time> armed_at_;
  std::optional<ResolvedInterval> interval_;
  std::set<std::size_t> prevented_;
  bool future_warned_ = false;
  std::size_t evaluations_ = 0;
  std::vector<Time> evaluated_at_;
};

}  // namespace ailtl
