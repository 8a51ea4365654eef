#include "ailtl/temporal.hpp"

#include "ailtl/error.hpp"

#include <algorithm>
#include <set>

namespace ailtl {

const char* to_string(TemporalOp op) {
  switch (op) {
    case TemporalOp::Always: return "ALWAYS";
    case TemporalOp::Eventually: return "EVENTUALLY";
    case TemporalOp::Never: return "NEVER";
  }
  return "?";
}

const char* to_string(CoreVerdict v) {
  switch (v) {
    case CoreVerdict::HoldsSoFar: return "HoldsSoFar";
    case CoreVerdict::HoldsFinal: return "HoldsFinal";
    case CoreVerdict::ViolatedNow: return "ViolatedNow";
    case CoreVerdict::Vacuous: return "Vacuous";
  }
  return "?";
}

std::string render(const TimeLit& t) {
  if (!t.clock) return std::to_string(t.amount);
  std::string mm = std::to_string(t.amount % 60);
  if (mm.size() < 2) mm.insert(0, "0");
  return std::to_string(t.amount / 60) + ":" + mm;
}

std::string render(const IntervalOp& op) {
  std::string out = to_string(op.op);
  if (!op.lower && !op.upper && !op.frequency) return out;
  out += '(';
  if (op.lower) out += render(*op.lower);
  if (op.upper) out += "," + render(*op.upper);
  if (op.frequency) out += ";" + render(*op.frequency);
  out += ')';
  return out;
}

ResolvedInterval resolve(const IntervalOp& op, Time anchor, Time default_frequency, std::int64_t ticks_per_minute) {
  ResolvedInterval iv;
  iv.op = op.op;
  iv.lower = anchor + (op.lower ? op.lower->ticks(ticks_per_minute) : 0);
  if (op.upper) iv.upper = anchor + op.upper->ticks(ticks_per_minute);
  iv.frequency = op.frequency ? op.frequency->ticks(ticks_per_minute) : default_frequency;
  if (iv.frequency < 1) throw Error(ErrorCode::InvalidArgument, "frequency must be at least 1 tick");
  iv.enabled_at = anchor;
  return iv;
}

bool due(Time frequency, Time enabled_at, Time now) {
  if (now < enabled_at) return false;
  return (now - enabled_at) % frequency == 0;
}

namespace {

// Positive atoms (facts or generator built-ins such as now/1) and `=` can
// bind; other comparisons and negations cannot.
bool is_binding_literal(const Literal& lit) {
  if (lit.negated) return false;
  if (is_comparison(lit.atom)) return lit.atom.name() == "=";
  return true;
}

}  // namespace

Evaluation eval_once(const ContextualFormula& f, const FactBase& kb, const Binding& seed) {
  Evaluation ev;
  Binding ctx = seed;
  if (!f.context.empty()) {
    auto sol = first_solution(kb, f.context, seed);
    if (!sol) {
      ev.context_found = false;
      ev.binding = seed;
      return ev;
    }
    ctx = std::move(*sol);
  }

  std::set<std::string> bindable;
  for (const auto& lit : f.phi) {
    if (!is_binding_literal(lit)) continue;
    std::vector<std::string> vars;
    ctx.apply(lit.atom).collect_variables(vars);
    bindable.insert(vars.begin(), vars.end());
  }
  for (const auto& lit : f.phi) {
    std::vector<std::string> vars;
    ctx.apply(lit.atom).collect_variables(vars);
    for (const auto& v : vars)
      if (!bindable.count(v))
        throw Error(ErrorCode::NonGroundAfterContext, v + " in " + render(lit) + " cannot be bound");
  }

  auto sol = first_solution(kb, f.phi, ctx);
  ev.target = sol.has_value();
  ev.binding = sol ? std::move(*sol) : std::move(ctx);
  return ev;
}

CoreVerdict step_core(const ResolvedInterval& iv, bool holds_now, Time now) {
  if (!in_window(iv, now)) return CoreVerdict::Vacuous;
  const bool at_end = iv.upper && now >= *iv.upper;
  switch (iv.op) {
    case TemporalOp::Always:
      if (!holds_now) return CoreVerdict::ViolatedNow;
      return at_end ? CoreVerdict::HoldsFinal : CoreVerdict::HoldsSoFar;
    case TemporalOp::Eventually:
      if (holds_now) return CoreVerdict::HoldsFinal;
      return at_end ? CoreVerdict::ViolatedNow : CoreVerdict::HoldsSoFar;
    case TemporalOp::Never:
      if (holds_now) return CoreVerdict::ViolatedNow;
      return at_end ? CoreVerdict::HoldsFinal : CoreVerdict::HoldsSoFar;
  }
  return CoreVerdict::HoldsSoFar;
}

CoreVerdict close_core(const ResolvedInterval& iv, Time now) {
  if (!iv.upper || now < *iv.upper) return CoreVerdict::HoldsSoFar;
  return iv.op == TemporalOp::Eventually ? CoreVerdict::ViolatedNow : CoreVerdict::HoldsFinal;
}

std::string render(const Reaction& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    if (const auto* a = std::get_if<ActionElem>(&r[i])) {
      out += render(a->atom);
      if (!a->precondition.empty()) {
        out += " :< ";
        if (a->precondition.size() > 1) out += "(" + render(a->precondition) + ")";
        else out += render(a->precondition);
      }
    } else {
      const auto& c = std::get<ChoiceElem>(r[i]);
      out += c.variable + " IN {";
      for (std::size_t k = 0; k < c.options.size(); ++k) {
        if (k) out += ", ";
        out += render(c.options[k]);
      }
      out += " : " + c.preference + "}";
    }
  }
  return out;
}

void CostRegistry::set_cost(const std::string& preference, const Term& candidate, std::int64_t cost) {
  auto& table = tables_[preference];
  for (auto& [t, c] : table) {
    if (t == candidate) {
      c = cost;
      return;
    }
  }
  table.emplace_back(candidate, cost);
}

void CostRegistry::set_function(const std::string& preference, CostFunction fn) {
  functions_[preference] = std::move(fn);
}

bool CostRegistry::has(const std::string& preference) const {
  return tables_.count(preference) || functions_.count(preference);
}

Term CostRegistry::select(const ChoiceElem& choice, const FactBase& kb) const {
  auto fn = functions_.find(choice.preference);
  auto table = tables_.find(choice.preference);
  if (fn == functions_.end() && table == tables_.end())
    throw Error(ErrorCode::UnresolvedPreference, "no cost evaluator named " + choice.preference);

  const Term* best = nullptr;
  std::int64_t best_cost = 0;
  for (const auto& option : choice.options) {
    std::optional<std::int64_t> cost;
    if (fn != functions_.end()) cost = fn->second(option, kb);
    if (!cost && table != tables_.end()) {
      for (const auto& [t, c] : table->second)
        if (t == option) cost = c;
    }
    if (cost && (best == nullptr || *cost < best_cost)) {
      best = &option;
      best_cost = *cost;
    }
  }
  if (best == nullptr)
    throw Error(ErrorCode::UnresolvedPreference, choice.preference + " prices none of the options");
  return *best;
}

Emission emission_of(const Term& atom) {
  if (auto split = split_kind_suffix(atom.name())) {
    EventKind kind = split->second == EventKind::Past ? EventKind::Action : split->second;
    return Emission{kind, Term::compound(split->first, atom.args())};
  }
  return Emission{EventKind::Action, atom};
}

std::vector<Emission> fire_reaction(const Reaction& r, const FactBase& kb, const Binding& binding,
                                    const CostRegistry& costs) {
  Binding b = binding;
  for (const auto& elem : r) {
    if (const auto* c = std::get_if<ChoiceElem>(&elem)) b.bind(c->variable, costs.select(*c, kb));
  }

  std::vector<Emission> out;
  for (const auto& elem : r) {
    const auto* a = std::get_if<ActionElem>(&elem);
    if (a == nullptr) continue;
    Binding local = b;
    if (!a->precondition.empty()) {
      auto sol = first_solution(kb, a->precondition, b);
      if (!sol) continue;
      local = std::move(*sol);
    }
    Term atom = local.apply(a->atom);
    if (!atom.is_ground() || !atom.is_callable())
      throw Error(ErrorCode::NonGroundAction, render(atom));
    out.push_back(emission_of(atom));
  }
  return out;
}

}  // namespace ailtl
