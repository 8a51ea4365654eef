#pragma once

#include "ailtl/term.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ailtl {

struct Literal {
  bool negated = false;
  Term atom;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Conjunction = std::vector<Literal>;

// Comparison literals are atoms whose functor is one of these, arity 2.
inline constexpr std::string_view kCompareOps[] = {"<", ">", "<=", ">=", "=", "\\="};
bool is_comparison(const Term& atom);

// Arithmetic over integers and the functors add/sub/mul/div/mod/min/max/abs/neg.
// Throws UnboundBuiltinArg on variables and TypeError on non-numeric operands.
std::int64_t eval_arith(const Term& t);

// A built-in receives its arguments with the current binding applied (they
// may still hold variables) and returns candidate argument tuples. The query
// engine unifies each tuple with the call, so tests return either the
// arguments themselves or nothing, and generators return bindings.
using Builtin = std::function<std::vector<std::vector<Term>>(std::span<const Term> args)>;

// Ground-fact store plus registered built-in predicates.
class FactBase {
public:
  // Registers comparisons and nothing else.
  FactBase();

  // Returns false if the fact was already present.
  bool assert_fact(const Term& fact);
  // Returns false if the fact was absent.
  bool retract_fact(const Term& fact);
  bool contains(const Term& fact) const { return index_.count(fact) != 0; }
  std::size_t size() const noexcept { return index_.size(); }

  // Facts of one predicate, in insertion order.
  const std::vector<Term>& facts_of(const Signature& sig) const;
  // All facts, grouped by predicate, insertion order within a group.
  std::vector<Term> all_facts() const;

  void register_builtin(const std::string& name, std::size_t arity, Builtin fn);
  bool is_builtin(const Signature& sig) const { return builtins_.count(sig) != 0; }
  const Builtin* builtin(const Signature& sig) const;

private:
  std::map<Signature, std::vector<Term>> buckets_;
  std::set<Term> index_;
  std::map<Signature, Builtin> builtins_;
};

// Receives each solution; return false to stop the enumeration.
using SolutionSink = std::function<bool(const Binding&)>;

// Left-to-right conjunctive query. Positive literals match stored facts in
// insertion order or call built-ins; `not L` succeeds when L has no match and
// requires L to be free of variables at call time.
void query(const FactBase& kb, const Conjunction& conj, const Binding& seed, const SolutionSink& sink);

std::vector<Binding> solutions(const FactBase& kb, const Conjunction& conj, const Binding& seed = {});
std::optional<Binding> first_solution(const FactBase& kb, const Conjunction& conj, const Binding& seed = {});

std::string render(const Literal& lit);
std::string render(const Conjunction& conj);

}  // namespace ailtl
