#include "ailtl/kb.hpp"

#include "ailtl/error.hpp"

#include <algorithm>
#include <limits>

namespace ailtl {

bool is_comparison(const Term& atom) {
  if (!atom.is_compound() || atom.arity() != 2) return false;
  return std::find(std::begin(kCompareOps), std::end(kCompareOps), atom.name()) != std::end(kCompareOps);
}

std::int64_t eval_arith(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Integer:
      return t.value();
    case Term::Kind::Variable:
    case Term::Kind::Wildcard:
      throw Error(ErrorCode::UnboundBuiltinArg, "unbound " + t.name() + " in arithmetic");
    case Term::Kind::Symbol:
      throw Error(ErrorCode::TypeError, "non-numeric operand " + t.name());
    case Term::Kind::Compound:
      break;
  }
  const auto& f = t.name();
  if (t.arity() == 1) {
    auto x = eval_arith(t.args()[0]);
    if (f == "neg") return -x;
    if (f == "abs") return x < 0 ? -x : x;
  } else if (t.arity() == 2) {
    auto x = eval_arith(t.args()[0]);
    auto y = eval_arith(t.args()[1]);
    if (f == "add") return x + y;
    if (f == "sub") return x - y;
    if (f == "mul") return x * y;
    if (f == "min") return std::min(x, y);
    if (f == "max") return std::max(x, y);
    if (f == "div" || f == "mod") {
      if (y == 0) throw Error(ErrorCode::TypeError, "division by zero in " + render(t));
      return f == "div" ? x / y : x % y;
    }
  }
  throw Error(ErrorCode::TypeError, "not an arithmetic expression: " + render(t));
}

namespace {

bool has_variable(const Term& t) {
  if (t.is_variable()) return true;
  if (t.is_compound())
    for (const auto& a : t.args())
      if (has_variable(a)) return true;
  return false;
}

// Equality is unification against a ground side; ordering needs integers.
std::vector<std::vector<Term>> compare_builtin(const std::string& op, std::span<const Term> args) {
  const Term& lhs = args[0];
  const Term& rhs = args[1];
  if (op == "=") {
    if (lhs.is_ground() && rhs.is_ground()) {
      if (lhs == rhs) return {{lhs, rhs}};
      if (lhs.is_compound() || rhs.is_compound()) {
        // Arithmetic on either side compares by value.
        try {
          if (eval_arith(lhs) == eval_arith(rhs)) return {{lhs, rhs}};
        } catch (const Error&) {
        }
      }
      return {};
    }
    if (lhs.is_ground()) return {{lhs, lhs}};
    if (rhs.is_ground()) return {{rhs, rhs}};
    throw Error(ErrorCode::UnboundBuiltinArg, "both sides of = unbound");
  }
  if (op == "\\=") {
    if (has_variable(lhs) || has_variable(rhs))
      throw Error(ErrorCode::UnboundBuiltinArg, "unbound operand of \\=");
    if (lhs.is_ground() && rhs.is_ground() && lhs != rhs) {
      bool numeric_equal = false;
      if (lhs.is_compound() || rhs.is_compound()) {
        try {
          numeric_equal = eval_arith(lhs) == eval_arith(rhs);
        } catch (const Error&) {
        }
      }
      if (!numeric_equal) return {{lhs, rhs}};
    }
    return {};
  }
  auto x = eval_arith(lhs);
  auto y = eval_arith(rhs);
  bool ok = false;
  if (op == "<") ok = x < y;
  else if (op == ">") ok = x > y;
  else if (op == "<=") ok = x <= y;
  else if (op == ">=") ok = x >= y;
  if (!ok) return {};
  return {{lhs, rhs}};
}

}  // namespace

FactBase::FactBase() {
  for (auto op : kCompareOps) {
    std::string name(op);
    register_builtin(name, 2, [name](std::span<const Term> args) { return compare_builtin(name, args); });
  }
}

bool FactBase::assert_fact(const Term& fact) {
  if (!fact.is_ground()) throw Error(ErrorCode::NonGroundFact, render(fact));
  if (!fact.is_callable()) throw Error(ErrorCode::NonGroundFact, "not an atom: " + render(fact));
  if (is_builtin(signature_of(fact))) throw Error(ErrorCode::ReservedFunctor, render(fact));
  if (!index_.insert(fact).second) return false;
  buckets_[signature_of(fact)].push_back(fact);
  return true;
}

bool FactBase::retract_fact(const Term& fact) {
  if (index_.erase(fact) == 0) return false;
  auto& bucket = buckets_[signature_of(fact)];
  bucket.erase(std::find(bucket.begin(), bucket.end(), fact));
  return true;
}

const std::vector<Term>& FactBase::facts_of(const Signature& sig) const {
  static const std::vector<Term> empty;
  auto it = buckets_.find(sig);
  return it == buckets_.end() ? empty : it->second;
}

std::vector<Term> FactBase::all_facts() const {
  std::vector<Term> out;
  for (const auto& [sig, bucket] : buckets_) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

void FactBase::register_builtin(const std::string& name, std::size_t arity, Builtin fn) {
  Signature sig{name, arity};
  if (!buckets_[sig].empty()) throw Error(ErrorCode::ReservedFunctor, name + " already holds facts");
  buckets_.erase(sig);
  builtins_[sig] = std::move(fn);
}

const Builtin* FactBase::builtin(const Signature& sig) const {
  auto it = builtins_.find(sig);
  return it == builtins_.end() ? nullptr : &it->second;
}

namespace {

class Solver {
public:
  Solver(const FactBase& kb, const Conjunction& conj, const SolutionSink& sink)
      : kb_(kb), conj_(conj), sink_(sink) {}

  // Returns false once the sink asked to stop.
  bool solve(std::size_t i, const Binding& b) {
    if (i == conj_.size()) return sink_(b);
    const Literal& lit = conj_[i];
    Term goal = b.apply(lit.atom);
    if (lit.negated) {
      if (has_variable(goal))
        throw Error(ErrorCode::UnboundNegation, "not " + render(goal));
      bool found = false;
      each_match(goal, b, [&](const Binding&) {
        found = true;
        return false;
      });
      return found ? true : solve(i + 1, b);
    }
    return each_match(goal, b, [&](const Binding& nb) { return solve(i + 1, nb); });
  }

private:
  template <typename F>
  bool each_match(const Term& goal, const Binding& b, F&& next) {
    if (!goal.is_callable())
      throw Error(ErrorCode::TypeError, "not callable: " + render(goal));
    Signature sig = signature_of(goal);
    if (const Builtin* fn = kb_.builtin(sig)) {
      auto tuples = (*fn)(std::span<const Term>(goal.args()));
      for (const auto& tuple : tuples) {
        Binding nb = b;
        bool ok = true;
        for (std::size_t k = 0; k < tuple.size() && ok; ++k) ok = match(goal.args()[k], tuple[k], nb);
        if (ok && !next(nb)) return false;
      }
      return true;
    }
    const auto& bucket = kb_.facts_of(sig);
    for (const auto& fact : bucket) {
      Binding nb = b;
      if (match(goal, fact, nb) && !next(nb)) return false;
    }
    return true;
  }

  const FactBase& kb_;
  const Conjunction& conj_;
  const SolutionSink& sink_;
};

}  // namespace

void query(const FactBase& kb, const Conjunction& conj, const Binding& seed, const SolutionSink& sink) {
  Solver(kb, conj, sink).solve(0, seed);
}

std::vector<Binding> solutions(const FactBase& kb, const Conjunction& conj, const Binding& seed) {
  std::vector<Binding> out;
  query(kb, conj, seed, [&](const Binding& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::optional<Binding> first_solution(const FactBase& kb, const Conjunction& conj, const Binding& seed) {
  std::optional<Binding> out;
  query(kb, conj, seed, [&](const Binding& b) {
    out = b;
    return false;
  });
  return out;
}

std::string render(const Literal& lit) {
  std::string out = lit.negated ? "not " : "";
  if (is_comparison(lit.atom)) {
    out += render(lit.atom.args()[0]) + " " + lit.atom.name() + " " + render(lit.atom.args()[1]);
  } else {
    out += render(lit.atom);
  }
  return out;
}

std::string render(const Conjunction& conj) {
  std::string out;
  for (std::size_t i = 0; i < conj.size(); ++i) {
    if (i) out += ", ";
    out += render(conj[i]);
  }
  return out;
}

}  // namespace ailtl
