#pragma once

#include "ailtl/kb.hpp"
#include "ailtl/term.hpp"

#include <compare>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ailtl {

// Name of a ground term: the same shape with every constant and functor
// tagged as name-level. Rendered with a trailing quote, `p'(a',b')`.
class Name {
public:
  enum class Kind : std::uint8_t { Symbol, Integer, Compound };

  Kind kind() const noexcept { return kind_; }
  const std::string& functor() const noexcept { return functor_; }
  std::int64_t value() const noexcept { return value_; }
  const std::vector<Name>& args() const noexcept { return args_; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b);

private:
  friend Name reify(const Term& t);

  Kind kind_ = Kind::Symbol;
  std::string functor_;
  std::int64_t value_ = 0;
  std::vector<Name> args_;
};

// Throws NonGroundReify for terms with variables or wildcards.
Name reify(const Term& t);
Term unreify(const Name& n);
std::string render(const Name& n);

// Matches a head template against a name. Template variables stand for
// names and are bound to the object-level term they denote.
bool match_name(const Term& tmpl, const Name& n, Binding& b);

enum class Polarity : std::uint8_t { Solve, SolveNot };

const char* to_string(Polarity p);

// solve(head) :- body.   /   solve_not(head) :- body.
struct MetaRule {
  Polarity polarity = Polarity::Solve;
  Term head;
  Conjunction body;

  friend bool operator==(const MetaRule&, const MetaRule&) = default;
};

std::string render(const MetaRule& r);

enum class GateDecision : std::uint8_t { Confirmed, BlockedBySolveFail, BlockedBySolveNot, NoRulesApply };

const char* to_string(GateDecision d);

inline bool allows(GateDecision d) { return d == GateDecision::Confirmed || d == GateDecision::NoRulesApply; }

struct GateOutcome {
  GateDecision decision = GateDecision::NoRulesApply;
  bool solve_applies = false;
  bool solve_succeeds = false;
  bool solve_not_applies = false;
  bool solve_not_succeeds = false;
};

// A goal with matching solve rules needs one of them to succeed; a matching
// solve_not rule that succeeds blocks it regardless. When solve fails and
// solve_not succeeds the decision is BlockedBySolveFail and both flags are
// set in the outcome.
GateOutcome gate(const Term& goal, const std::vector<MetaRule>& rules, const FactBase& kb);

// solve(n) or solve_not(n) as a member of an interpretation.
struct MetaAtom {
  Polarity polarity = Polarity::Solve;
  Name name;

  friend bool operator==(const MetaAtom&, const MetaAtom&) = default;
  friend std::strong_ordering operator<=>(const MetaAtom&, const MetaAtom&) = default;
};

using Atom = std::variant<Term, MetaAtom>;
using AtomSet = std::set<Atom>;

// A <- solve(name(A)) and not A <- solve_not(name(A)).
bool acceptable(const AtomSet& set);

// Drops the meta atoms.
AtomSet base_version(const AtomSet& set);

}  // namespace ailtl
