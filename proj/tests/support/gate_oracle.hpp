#pragma once

// Random small gate programs and a brute-force reading of the solve /
// solve_not decision, independent of metagate.cpp and of the query engine.

#include "ailtl/metagate.hpp"
#include "support/oracles.hpp"

#include <random>

namespace oracle {

struct GateProgram {
  std::vector<ailtl::Term> facts;
  std::vector<ailtl::MetaRule> rules;
  std::vector<ailtl::Term> goals;
};

// One-way matching of a head template against an object-level goal.
inline bool match_head(const ailtl::Term& tmpl, const ailtl::Term& goal, std::map<std::string, ailtl::Term>& s) {
  if (tmpl.is_wildcard()) return true;
  if (tmpl.is_variable()) {
    auto [it, fresh] = s.emplace(tmpl.name(), goal);
    return fresh || it->second == goal;
  }
  if (tmpl.kind() != goal.kind() || tmpl.name() != goal.name() || tmpl.value() != goal.value() ||
      tmpl.arity() != goal.arity())
    return false;
  for (std::size_t i = 0; i < tmpl.arity(); ++i)
    if (!match_head(tmpl.args()[i], goal.args()[i], s)) return false;
  return true;
}

struct RuleVerdicts {
  bool solve_applies = false, solve_succeeds = false;
  bool not_applies = false, not_succeeds = false;
};

inline RuleVerdicts evaluate_rules(const GateProgram& prog, const ailtl::Term& goal) {
  RuleVerdicts v;
  for (const auto& r : prog.rules) {
    std::map<std::string, ailtl::Term> s;
    if (!match_head(r.head, goal, s)) continue;
    std::vector<Lit> body;
    for (const auto& l : r.body) body.push_back(Lit{l.negated, substitute(l.atom, s)});
    const bool ok = body.empty() || !brute_force(prog.facts, body).empty();
    if (r.polarity == ailtl::Polarity::Solve) {
      v.solve_applies = true;
      v.solve_succeeds = v.solve_succeeds || ok;
    } else {
      v.not_applies = true;
      v.not_succeeds = v.not_succeeds || ok;
    }
  }
  return v;
}

inline ailtl::GateDecision expected_decision(const RuleVerdicts& v) {
  using D = ailtl::GateDecision;
  if (v.solve_applies && !v.solve_succeeds) return D::BlockedBySolveFail;
  if (v.not_succeeds) return D::BlockedBySolveNot;
  if (v.solve_applies || v.not_applies) return D::Confirmed;
  return D::NoRulesApply;
}

// <= 5 meta rules and <= 8 facts over act/1 and go/2 goals.
inline GateProgram random_gate_program(std::mt19937& rng) {
  using ailtl::Term;
  const char* consts[] = {"a", "b", "c"};
  auto c = [&] { return Term::symbol(consts[rng() % 3]); };
  GateProgram p;

  const int nf = static_cast<int>(rng() % 9);
  for (int i = 0; i < nf; ++i) {
    switch (rng() % 3) {
      case 0: p.facts.push_back(Term::compound("ok", {c()})); break;
      case 1: p.facts.push_back(Term::compound("bad", {c()})); break;
      default: p.facts.push_back(Term::compound("link", {c(), c()})); break;
    }
  }
  std::sort(p.facts.begin(), p.facts.end());
  p.facts.erase(std::unique(p.facts.begin(), p.facts.end()), p.facts.end());

  const int nr = static_cast<int>(rng() % 6);
  for (int i = 0; i < nr; ++i) {
    ailtl::MetaRule r;
    r.polarity = rng() % 2 ? ailtl::Polarity::Solve : ailtl::Polarity::SolveNot;
    const Term X = Term::variable("X"), Y = Term::variable("Y");
    std::vector<Term> head_vars;
    switch (rng() % 4) {
      case 0: r.head = Term::compound("act", {X}); head_vars = {X}; break;
      case 1: r.head = Term::compound("act", {c()}); break;
      case 2: r.head = Term::compound("go", {X, Y}); head_vars = {X, Y}; break;
      default: r.head = Term::compound("go", {X, c()}); head_vars = {X}; break;
    }
    auto arg = [&]() -> Term {
      if (!head_vars.empty() && rng() % 3) return head_vars[rng() % head_vars.size()];
      return rng() % 4 == 0 ? Term::variable("Z") : c();
    };
    const int nb = static_cast<int>(rng() % 3);
    for (int j = 0; j < nb; ++j) {
      switch (rng() % 4) {
        case 0: r.body.push_back({false, Term::compound("ok", {arg()})}); break;
        case 1: r.body.push_back({false, Term::compound("bad", {arg()})}); break;
        case 2: r.body.push_back({false, Term::compound("link", {arg(), arg()})}); break;
        default: {
          // Negation over head variables or constants only, so it is ground.
          Term a = head_vars.empty() ? c() : head_vars[rng() % head_vars.size()];
          r.body.push_back({true, Term::compound(rng() % 2 ? "ok" : "bad", {a})});
          break;
        }
      }
    }
    std::stable_partition(r.body.begin(), r.body.end(), [](const ailtl::Literal& l) { return !l.negated; });
    p.rules.push_back(std::move(r));
  }

  for (const char* x : consts) {
    p.goals.push_back(Term::compound("act", {Term::symbol(x)}));
    for (const char* y : consts) p.goals.push_back(Term::compound("go", {Term::symbol(x), Term::symbol(y)}));
  }
  return p;
}

// Confirmed goals plus the meta atoms that succeed for them: solve(g) when a
// solve rule proves g and nothing blocks it, solve_not(g) when a solve_not
// rule proves it.
inline ailtl::AtomSet interpretation(const GateProgram& prog, const std::vector<ailtl::GateDecision>& decisions) {
  ailtl::AtomSet set;
  for (std::size_t i = 0; i < prog.goals.size(); ++i) {
    const auto& g = prog.goals[i];
    const RuleVerdicts v = evaluate_rules(prog, g);
    const bool confirmed = ailtl::allows(decisions[i]);
    if (confirmed) set.insert(ailtl::Atom{g});
    if (v.solve_succeeds && confirmed) set.insert(ailtl::MetaAtom{ailtl::Polarity::Solve, ailtl::reify(g)});
    if (v.not_succeeds) set.insert(ailtl::MetaAtom{ailtl::Polarity::SolveNot, ailtl::reify(g)});
  }
  return set;
}

}  // namespace oracle
