#include "ailtl/evolutionary.hpp"

#include "ailtl/error.hpp"

#include <chrono>

namespace ailtl {

EvolutionaryExpr as_expression(const ReactiveRule& rule) {
  EvolutionaryExpr x;
  x.tau = rule.monitor;
  x.repair = rule.reaction;
  return x;
}

const char* to_string(ExprStatus s) {
  switch (s) {
    case ExprStatus::Dormant: return "Dormant";
    case ExprStatus::Armed: return "Armed";
    case ExprStatus::Holding: return "Holding";
    case ExprStatus::Fulfilled: return "Fulfilled";
    case ExprStatus::Violated: return "Violated";
    case ExprStatus::Broken: return "Broken";
    case ExprStatus::Disabled: return "Disabled";
    case ExprStatus::FulfilledSoFar: return "FulfilledSoFar";
  }
  return "?";
}

bool is_terminal(ExprStatus s) {
  return s == ExprStatus::Fulfilled || s == ExprStatus::Violated || s == ExprStatus::Broken ||
         s == ExprStatus::Disabled;
}

bool is_allowed_transition(ExprStatus from, ExprStatus to) {
  using S = ExprStatus;
  switch (from) {
    case S::Dormant:
      return to == S::Armed || to == S::Disabled;
    case S::Armed:
      return to == S::Holding || to == S::Violated || to == S::Broken || to == S::Disabled || to == S::Fulfilled;
    case S::Holding:
      return to == S::Violated || to == S::Broken || to == S::Fulfilled;
    default:
      return false;
  }
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Repair: return "repair";
    case Provenance::Eta1: return "eta1";
    case Provenance::Eta2: return "eta2";
    case Provenance::Eta3: return "eta3";
    case Provenance::Reactive: return "reactive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Adds the scope's wall time to `sink` when enabled.
class Stopwatch {
public:
  Stopwatch(bool on, double& sink) : on_(on), sink_(sink) {
    if (on_) start_ = Clock::now();
  }
  ~Stopwatch() {
    if (on_) sink_ += std::chrono::duration<double, std::nano>(Clock::now() - start_).count();
  }
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;

private:
  bool on_;
  double& sink_;
  Clock::time_point start_;
};

// Adds entries of `extra` for variables `b` does not bind yet.
Binding merged(Binding b, const Binding& extra) {
  for (const auto& [k, v] : extra.entries())
    if (!b.contains(k)) b.bind(k, v);
  return b;
}

}  // namespace

ExprInstance::ExprInstance(const EvolutionaryExpr& expr, Time since, bool reactive)
    : expr_(&expr), reactive_(reactive), since_(since) {}

void ExprInstance::change(StepResult& out, Time t, ExprStatus to, std::string cause) {
  out.changes.push_back(StatusChange{t, status_, to, std::move(cause)});
  status_ = to;
}

void ExprInstance::arm(StepResult& out, const StepContext& ctx, Binding b, std::string cause) {
  binding_ = std::move(b);
  armed_at_ = ctx.now;
  Time anchor = expr_->pre.empty() ? 0 : ctx.now;
  interval_ = resolve(expr_->tau.op, anchor, ctx.default_frequency, ctx.ticks_per_minute);
  change(out, ctx.now, ExprStatus::Armed, std::move(cause));
}

void ExprInstance::emit_atom(StepResult& out, Provenance p, const Term& atom, const Binding& b) const {
  Term ground = b.apply(atom);
  if (!ground.is_ground() || !ground.is_callable()) throw Error(ErrorCode::NonGroundAction, render(ground));
  out.effects.push_back(Effect{p, emission_of(ground)});
}

void ExprInstance::emit_reaction(StepResult& out, const StepContext& ctx, Provenance p, const Reaction& r,
                                 const Binding& b) const {
  for (auto& e : fire_reaction(r, ctx.kb, b, ctx.costs)) out.effects.push_back(Effect{p, std::move(e)});
}

void ExprInstance::violate(StepResult& out, const StepContext& ctx, const Binding& b, std::string cause) {
  binding_ = b;
  change(out, ctx.now, ExprStatus::Violated, std::move(cause));
  if (expr_->repair)
    emit_reaction(out, ctx, reactive_ ? Provenance::Reactive : Provenance::Repair, *expr_->repair, b);
  if (expr_->eta1) emit_atom(out, Provenance::Eta1, *expr_->eta1, b);
}

StepResult ExprInstance::step(const StepContext& ctx) {
  StepResult out;
  if (is_terminal(status_)) return out;

  // Deciding whether tau is evaluated at all: precondition, breaking and
  // expected-future scans.
  std::optional<Occurrence> breaker;
  std::vector<Occurrence> fresh_hits;
  Binding eval_seed;
  {
    Stopwatch sw(ctx.timed, out.if_eval_ns);
    if (status_ == ExprStatus::Dormant) {
      if (expr_->pre.empty()) {
        arm(out, ctx, {}, "start");
      } else {
        MatchResult m = match_prefix(expr_->pre, ctx.history, since_, {}, &ctx.kb);
        switch (m.kind) {
          case MatchResult::Kind::NoEvents:
            return out;
          case MatchResult::Kind::Mismatch:
            change(out, ctx.now, ExprStatus::Disabled, render(m.event->payload));
            return out;
          case MatchResult::Kind::Prefix:
          case MatchResult::Kind::Complete:
            arm(out, ctx, m.binding, render(m.event->payload));
            break;
        }
      }
    }
    const Time scan_from = *armed_at_;
    eval_seed = binding_;
    if (!expr_->breaking.empty()) {
      auto hits = occurrences(expr_->breaking, ctx.history, scan_from, binding_, &ctx.kb);
      if (expr_->eta3) {
        for (auto& hit : hits)
          if (prevented_.insert(hit.position).second) fresh_hits.push_back(std::move(hit));
      } else if (!hits.empty()) {
        breaker = std::move(hits.front());
      }
    }
    if (!breaker && !expr_->future.empty()) {
      MatchResult f = match_prefix(expr_->future, ctx.history, scan_from, binding_, &ctx.kb);
      if (f.kind == MatchResult::Kind::Mismatch) {
        if (!future_warned_) {
          future_warned_ = true;
          out.warnings.push_back("expected events out of order at " + render(f.event->payload));
        }
      } else if (f.kind != MatchResult::Kind::NoEvents) {
        eval_seed = merged(eval_seed, f.binding);
      }
    }
  }

  if (breaker) {
    Stopwatch sw(ctx.timed, out.viol_or_broken_ns);
    binding_ = merged(binding_, breaker->binding);
    change(out, ctx.now, ExprStatus::Broken, render(breaker->event.payload));
    if (expr_->eta2) emit_atom(out, Provenance::Eta2, *expr_->eta2, binding_);
    return out;
  }
  if (!fresh_hits.empty()) {
    Stopwatch sw(ctx.timed, out.viol_or_broken_ns);
    for (const auto& hit : fresh_hits)
      emit_reaction(out, ctx, Provenance::Eta3, *expr_->eta3, merged(binding_, hit.binding));
  }

  const ResolvedInterval& iv = *interval_;
  CoreVerdict verdict = CoreVerdict::Vacuous;
  Binding verdict_binding = eval_seed;
  {
    Stopwatch sw(ctx.timed, out.eval_ns);
    if (in_window(iv, ctx.now) && due(iv, ctx.now)) {
      Evaluation ev = eval_once(expr_->tau, ctx.kb, eval_seed);
      ++evaluations_;
      evaluated_at_.push_back(ctx.now);
      if (ev.context_found) {
        verdict = step_core(iv, ev.target, ctx.now);
        verdict_binding = std::move(ev.binding);
      }
    }
    if (!is_final(verdict)) {
      CoreVerdict closing = close_core(iv, ctx.now);
      if (is_final(closing)) verdict = closing;
    }
  }

  switch (verdict) {
    case CoreVerdict::ViolatedNow: {
      Stopwatch sw(ctx.timed, out.viol_or_broken_ns);
      violate(out, ctx, verdict_binding, render(verdict_binding));
      break;
    }
    case CoreVerdict::HoldsFinal:
      binding_ = verdict_binding;
      change(out, ctx.now, ExprStatus::Fulfilled,
             iv.op == TemporalOp::Eventually && !verdict_binding.empty() ? render(verdict_binding) : "interval_end");
      break;
    case CoreVerdict::HoldsSoFar:
      if (status_ == ExprStatus::Armed) change(out, ctx.now, ExprStatus::Holding, "check");
      break;
    case CoreVerdict::Vacuous:
      break;
  }
  return out;
}

ExprStatus ExprInstance::final_report(Time end) const {
  if (status_ != ExprStatus::Armed && status_ != ExprStatus::Holding) return status_;
  const ResolvedInterval& iv = *interval_;
  if (iv.upper && end >= *iv.upper)
    return iv.op == TemporalOp::Eventually ? ExprStatus::Violated : ExprStatus::Fulfilled;
  if (iv.op == TemporalOp::Eventually) return status_;
  return ExprStatus::FulfilledSoFar;
}

bool ExprInstance::can_rearm(Time now) const {
  if (status_ != ExprStatus::Violated && status_ != ExprStatus::Broken) return false;
  if (!expr_->pre.empty()) return true;
  return !(interval_ && interval_->upper && now >= *interval_->upper);
}

}  // namespace ailtl
