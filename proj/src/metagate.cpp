#include "ailtl/metagate.hpp"

#include "ailtl/error.hpp"

#include <algorithm>

namespace ailtl {

Name reify(const Term& t) {
  Name n;
  switch (t.kind()) {
    case Term::Kind::Symbol:
      n.functor_ = t.name();
      return n;
    case Term::Kind::Integer:
      n.kind_ = Name::Kind::Integer;
      n.value_ = t.value();
      return n;
    case Term::Kind::Compound:
      n.kind_ = Name::Kind::Compound;
      n.functor_ = t.name();
      n.args_.reserve(t.arity());
      for (const auto& a : t.args()) n.args_.push_back(reify(a));
      return n;
    case Term::Kind::Variable:
    case Term::Kind::Wildcard:
      break;
  }
  throw Error(ErrorCode::NonGroundReify, render(t));
}

Term unreify(const Name& n) {
  switch (n.kind()) {
    case Name::Kind::Symbol: return Term::symbol(n.functor());
    case Name::Kind::Integer: return Term::integer(n.value());
    case Name::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(n.args().size());
      for (const auto& a : n.args()) args.push_back(unreify(a));
      return Term::compound(n.functor(), std::move(args));
    }
  }
  return {};
}

std::strong_ordering operator<=>(const Name& a, const Name& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.functor_ <=> b.functor_; c != 0) return c;
  if (auto c = a.value_ <=> b.value_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
}

std::string render(const Name& n) {
  switch (n.kind()) {
    case Name::Kind::Symbol: return n.functor() + "'";
    case Name::Kind::Integer: return std::to_string(n.value()) + "'";
    case Name::Kind::Compound: {
      std::string out = n.functor() + "'(";
      for (std::size_t i = 0; i < n.args().size(); ++i) {
        if (i) out += ',';
        out += render(n.args()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

bool match_name(const Term& tmpl, const Name& n, Binding& b) {
  switch (tmpl.kind()) {
    case Term::Kind::Wildcard:
      return true;
    case Term::Kind::Variable: {
      Term denoted = unreify(n);
      if (const Term* bound = b.find(tmpl.name())) return *bound == denoted;
      b.bind(tmpl.name(), std::move(denoted));
      return true;
    }
    case Term::Kind::Symbol:
      return n.kind() == Name::Kind::Symbol && n.functor() == tmpl.name();
    case Term::Kind::Integer:
      return n.kind() == Name::Kind::Integer && n.value() == tmpl.value();
    case Term::Kind::Compound:
      if (n.kind() != Name::Kind::Compound || n.functor() != tmpl.name() || n.args().size() != tmpl.arity())
        return false;
      for (std::size_t i = 0; i < tmpl.arity(); ++i)
        if (!match_name(tmpl.args()[i], n.args()[i], b)) return false;
      return true;
  }
  return false;
}

const char* to_string(Polarity p) { return p == Polarity::Solve ? "solve" : "solve_not"; }

std::string render(const MetaRule& r) {
  std::string out = std::string(to_string(r.polarity)) + "(" + render(r.head) + ")";
  if (!r.body.empty()) out += " :- " + render(r.body);
  return out + ".";
}

const char* to_string(GateDecision d) {
  switch (d) {
    case GateDecision::Confirmed: return "Confirmed";
    case GateDecision::BlockedBySolveFail: return "BlockedBySolveFail";
    case GateDecision::BlockedBySolveNot: return "BlockedBySolveNot";
    case GateDecision::NoRulesApply: return "NoRulesApply";
  }
  return "?";
}

GateOutcome gate(const Term& goal, const std::vector<MetaRule>& rules, const FactBase& kb) {
  const Name n = reify(goal);
  GateOutcome out;
  for (const auto& r : rules) {
    Binding b;
    if (!match_name(r.head, n, b)) continue;
    bool& applies = r.polarity == Polarity::Solve ? out.solve_applies : out.solve_not_applies;
    bool& succeeds = r.polarity == Polarity::Solve ? out.solve_succeeds : out.solve_not_succeeds;
    applies = true;
    if (!succeeds && first_solution(kb, r.body, b)) succeeds = true;
  }
  if (out.solve_applies && !out.solve_succeeds)
    out.decision = GateDecision::BlockedBySolveFail;
  else if (out.solve_not_succeeds)
    out.decision = GateDecision::BlockedBySolveNot;
  else if (out.solve_applies || out.solve_not_applies)
    out.decision = GateDecision::Confirmed;
  return out;
}

bool acceptable(const AtomSet& set) {
  for (const auto& a : set) {
    const auto* m = std::get_if<MetaAtom>(&a);
    if (m == nullptr) continue;
    bool present = set.count(Atom{unreify(m->name)}) != 0;
    if (m->polarity == Polarity::Solve && !present) return false;
    if (m->polarity == Polarity::SolveNot && present) return false;
  }
  return true;
}

AtomSet base_version(const AtomSet& set) {
  AtomSet out;
  for (const auto& a : set)
    if (std::holds_alternative<Term>(a)) out.insert(a);
  return out;
}

}  // namespace ailtl
