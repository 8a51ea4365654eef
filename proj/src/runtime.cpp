#include "ailtl/runtime.hpp"

#include "ailtl/error.hpp"

#include <chrono>
#include <cstdio>

namespace ailtl {

EngineConfig config_for(const Program& p) {
  EngineConfig cfg;
  const auto& c = p.config;
  if (c.default_frequency) cfg.default_frequency = *c.default_frequency;
  if (c.ticks_per_minute) cfg.ticks_per_minute = *c.ticks_per_minute;
  if (c.end) cfg.end = *c.end;
  if (c.emission_cap) cfg.emission_cap = static_cast<std::size_t>(*c.emission_cap);
  return cfg;
}

CycleMetrics average(const std::vector<CycleMetrics>& cycles) {
  CycleMetrics out;
  if (cycles.empty()) return out;
  for (const auto& c : cycles) {
    out.f = c.f;
    out.m += c.m;
    out.if_eval += c.if_eval;
    out.max_eval += c.max_eval;
    out.if_viol_or_broken += c.if_viol_or_broken;
    out.total += c.total;
  }
  const double n = static_cast<double>(cycles.size());
  out.m /= n;
  out.if_eval /= n;
  out.max_eval /= n;
  out.if_viol_or_broken /= n;
  out.total /= n;
  return out;
}

std::size_t Report::count(ExprStatus s) const {
  std::size_t n = 0;
  for (const auto& f : finals) n += f.status == s;
  return n;
}

std::size_t Report::blocked() const {
  std::size_t n = 0;
  for (const auto& g : gates) n += !allows(g.decision);
  return n;
}

namespace {

using Clock = std::chrono::steady_clock;

double since_ns(Clock::time_point t0) {
  return std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string instance_ref(const std::string& id, std::size_t n) { return id + "#" + std::to_string(n); }

}  // namespace

std::string render(const Report& r, bool with_metrics) {
  std::string out = "# ailtl report v1\n";
  out += "end " + std::to_string(r.end) + "\n";
  for (const auto& t : r.transitions)
    out += "transition " + std::to_string(t.time) + " " + instance_ref(t.id, t.instance) + " " + to_string(t.from) +
           " -> " + to_string(t.to) + " cause=" + t.cause + "\n";
  for (const auto& e : r.emissions)
    out += "emit " + std::to_string(e.time) + " " + instance_ref(e.id, e.instance) + " " + to_string(e.provenance) +
           " " + kind_letter(e.emission.kind) + " " + render(e.emission.payload) + "\n";
  for (const auto& g : r.gates)
    out += "gate " + std::to_string(g.time) + " " + kind_letter(g.kind) + " " + render(g.payload) + " " +
           to_string(g.decision) + "\n";
  for (const auto& w : r.warnings)
    out += "warn " + std::to_string(w.time) + " " + instance_ref(w.id, w.instance) + " " + w.message + "\n";
  for (const auto& f : r.finals)
    out += "final " + instance_ref(f.id, f.instance) + " " + to_string(f.status) + " binding=" + render(f.binding) +
           " evaluations=" + std::to_string(f.evaluations) + "\n";

  out += "summary instances=" + std::to_string(r.finals.size());
  for (auto s : {ExprStatus::Dormant, ExprStatus::Armed, ExprStatus::Holding, ExprStatus::Fulfilled,
                 ExprStatus::FulfilledSoFar, ExprStatus::Violated, ExprStatus::Broken, ExprStatus::Disabled}) {
    std::string name = to_string(s);
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out += " " + name + "=" + std::to_string(r.count(s));
  }
  out += " emitted=" + std::to_string(r.emissions.size()) + " gated=" + std::to_string(r.gates.size()) +
         " blocked=" + std::to_string(r.blocked()) + "\n";

  if (with_metrics && !r.metrics.empty()) {
    CycleMetrics avg = average(r.metrics);
    out += "f,m,if_eval,max_eval,if_viol_or_broken,total\n";
    out += std::to_string(avg.f) + "," + fixed(avg.m) + "," + fixed(avg.if_eval) + "," + fixed(avg.max_eval) + "," +
           fixed(avg.if_viol_or_broken) + "," + fixed(avg.total) + "\n";
  }
  return out;
}

Engine::Engine(const Program& program, EngineConfig cfg) : program_(program), cfg_(std::move(cfg)) {
  if (cfg_.default_frequency < 1) throw Error(ErrorCode::InvalidArgument, "default frequency must be at least 1");
  if (cfg_.ticks_per_minute < 1) throw Error(ErrorCode::InvalidArgument, "ticks per minute must be at least 1");

  kb_.register_builtin("now", 1, [this](std::span<const Term>) {
    return std::vector<std::vector<Term>>{{Term::integer(now_)}};
  });
  // time_of(f_K, T): timestamp of the latest recorded f event of kind K.
  kb_.register_builtin("time_of", 2, [this](std::span<const Term> args) {
    std::vector<std::vector<Term>> out;
    if (!args[0].is_symbol()) throw Error(ErrorCode::UnboundBuiltinArg, "time_of/2 needs a functor");
    std::string base = args[0].name();
    std::optional<EventKind> kind;
    if (auto split = split_kind_suffix(base)) {
      base = split->first;
      if (split->second != EventKind::Past) kind = split->second;
    }
    std::optional<Time> latest;
    for (const auto& [key, ev] : history_.current()) {
      if (key.functor != base || (kind && key.kind != *kind)) continue;
      if (!latest || ev.timestamp > *latest) latest = ev.timestamp;
    }
    if (latest) out.push_back({args[0], Term::integer(*latest)});
    return out;
  });

  for (const auto& f : program_.facts) kb_.assert_fact(f);
  for (const auto& row : program_.costs) costs_.set_cost(row.preference, row.candidate, row.cost);
  for (const auto& [functor, limit] : cfg_.retention) history_.set_retention(functor, limit);

  exprs_.reserve(program_.rules.size() + program_.exprs.size());
  for (const auto& r : program_.rules) exprs_.push_back(as_expression(r));
  for (const auto& x : program_.exprs) exprs_.push_back(x);
  for (std::size_t i = 0; i < exprs_.size(); ++i) {
    const bool reactive = i < program_.rules.size();
    std::string id = reactive ? "rule." + std::to_string(i + 1)
                              : "expr." + std::to_string(i - program_.rules.size() + 1);
    slots_.push_back(Slot{std::move(id), i, reactive, {}});
    slots_.back().instances.emplace_back(exprs_[i], 0, reactive);
  }
}

// Latest event per key as a fact `f_K(args)`, plus `f_P(args)` for the latest
// event of the functor whatever its kind. The caller has already retracted
// the superseded same-kind fact.
void Engine::mirror(const Event& e) {
  auto fact_for = [&](EventKind k) { return Term::compound(with_kind_suffix(e.payload.name(), k), e.payload.args()); };
  kb_.assert_fact(fact_for(e.kind));

  auto key = std::make_pair(e.payload.name(), e.payload.arity());
  auto it = past_mirror_.find(key);
  Term past = fact_for(EventKind::Past);
  if (it != past_mirror_.end() && !(it->second == past)) kb_.retract_fact(it->second);
  kb_.assert_fact(past);
  past_mirror_[key] = past;
}

void Engine::apply_effect(const Event& e) {
  if (e.kind != EventKind::Action || !e.payload.is_compound() || e.payload.arity() != 1) return;
  const Term& arg = e.payload.args()[0];
  if (e.payload.name() == "assert") kb_.assert_fact(arg);
  else if (e.payload.name() == "retract") kb_.retract_fact(arg);
}

void Engine::ingest(const Event& e) {
  if (e.kind == EventKind::Action) {
    GateDecision d = GateDecision::NoRulesApply;
    if (cfg_.gating && !program_.meta.empty()) d = gate(e.payload, program_.meta, kb_).decision;
    report_.gates.push_back(GateRecord{now_, e.kind, e.payload, d});
    if (!allows(d)) return;
  }
  // Retract the previous mirror before History forgets which version it was.
  if (auto old = history_.latest(e.kind, e.payload.name(), e.payload.arity()))
    kb_.retract_fact(Term::compound(with_kind_suffix(old->payload.name(), e.kind), old->payload.args()));
  history_.record(e);
  dirty_ = true;
  mirror(e);
  apply_effect(e);
}

void Engine::check(Time now) {
  const bool timed = cfg_.metrics;
  const auto cycle_start = timed ? Clock::now() : Clock::time_point{};
  CycleMetrics cm;
  cm.tick = now;
  cm.f = slots_.size();
  std::size_t emitted = 0;

  StepContext ctx{history_, kb_, costs_, now, cfg_.default_frequency, cfg_.ticks_per_minute, timed};
  for (auto& slot : slots_) {
    const auto retrieve_start = timed ? Clock::now() : Clock::time_point{};
    ExprInstance& live = slot.instances.back();
    const std::size_t n = slot.instances.size();
    if (timed) cm.m += since_ns(retrieve_start);
    if (is_terminal(live.status())) continue;

    StepResult r = live.step(ctx);
    cm.if_eval += r.if_eval_ns;
    cm.max_eval += r.eval_ns;
    cm.if_viol_or_broken += r.viol_or_broken_ns;

    for (auto& c : r.changes)
      report_.transitions.push_back(TransitionRecord{c.time, slot.id, n, c.from, c.to, std::move(c.cause)});
    for (auto& w : r.warnings) report_.warnings.push_back(WarningRecord{now, slot.id, n, std::move(w)});
    for (auto& fx : r.effects) {
      if (++emitted > cfg_.emission_cap)
        throw Error(ErrorCode::CapExceeded,
                    "more than " + std::to_string(cfg_.emission_cap) + " emissions at tick " + std::to_string(now));
      report_.emissions.push_back(EmissionRecord{now, slot.id, n, fx.provenance, fx.emission});
      pending_.push_back(std::move(fx.emission));
    }
    if (live.can_rearm(now)) slot.instances.emplace_back(exprs_[slot.expr], now + 1, slot.reactive);
  }

  if (timed) {
    cm.total = since_ns(cycle_start);
    if (cm.f > 0) {
      const double f = static_cast<double>(cm.f);
      cm.m /= f;
      cm.if_eval /= f;
      cm.max_eval /= f;
      cm.if_viol_or_broken /= f;
    }
    report_.metrics.push_back(cm);
  }
}

Report Engine::run(const std::vector<Event>& trace) {
  Time end = cfg_.end.value_or(0);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0 && trace[i].timestamp < trace[i - 1].timestamp)
      throw Error(ErrorCode::TimestampRegression, render(trace[i]));
    end = std::max(end, trace[i].timestamp);
  }
  report_ = Report{};
  report_.end = end;

  std::size_t next = 0;
  for (Time t = 0; t <= end; ++t) {
    now_ = t;
    dirty_ = false;
    // Reactions from the previous tick become visible first.
    std::vector<Emission> emitted = std::move(pending_);
    pending_.clear();
    for (auto& em : emitted) ingest(Event{em.kind, std::move(em.payload), t});
    while (next < trace.size() && trace[next].timestamp == t) ingest(trace[next++]);
    states_.advance(t, dirty_);
    check(t);
  }
  // Reactions to the last tick are still delivered, without further checks.
  for (auto& em : std::exchange(pending_, {})) ingest(Event{em.kind, std::move(em.payload), end});

  for (const auto& slot : slots_)
    for (std::size_t i = 0; i < slot.instances.size(); ++i) {
      const auto& inst = slot.instances[i];
      report_.finals.push_back(
          FinalRecord{slot.id, i + 1, inst.final_report(end), inst.binding(), inst.evaluations()});
    }
  return std::move(report_);
}

Report run_program(const Program& program, const std::vector<Event>& trace, const EngineConfig& cfg) {
  Engine engine(program, cfg);
  return engine.run(trace);
}

}  // namespace ailtl
