#pragma once

#include "ailtl/events.hpp"
#include "ailtl/kb.hpp"
#include "ailtl/term.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ailtl {

enum class TemporalOp : std::uint8_t { Always, Eventually, Never };

const char* to_string(TemporalOp op);

// Integer tick count, or an `H:MM` clock literal kept in minutes so that it
// renders back the way it was written.
struct TimeLit {
  std::int64_t amount = 0;
  bool clock = false;

  std::int64_t ticks(std::int64_t ticks_per_minute) const { return clock ? amount * ticks_per_minute : amount; }

  friend bool operator==(const TimeLit&, const TimeLit&) = default;
};

std::string render(const TimeLit& t);

// OP(m,n;k) as written.
struct IntervalOp {
  TemporalOp op = TemporalOp::Always;
  std::optional<TimeLit> lower;
  std::optional<TimeLit> upper;
  std::optional<TimeLit> frequency;

  friend bool operator==(const IntervalOp&, const IntervalOp&) = default;
};

std::string render(const IntervalOp& op);

// Interval in absolute engine ticks, frequency resolved.
struct ResolvedInterval {
  TemporalOp op = TemporalOp::Always;
  Time lower = 0;
  std::optional<Time> upper;
  Time frequency = 1;
  // Reference point for frequency phases.
  Time enabled_at = 0;
};

// `anchor` shifts both bounds; `default_frequency` applies when k is absent.
ResolvedInterval resolve(const IntervalOp& op, Time anchor, Time default_frequency, std::int64_t ticks_per_minute);

// True iff (now - enabled_at) is a multiple of k.
bool due(Time frequency, Time enabled_at, Time now);
inline bool due(const ResolvedInterval& iv, Time now) { return due(iv.frequency, iv.enabled_at, now); }

inline bool in_window(const ResolvedInterval& iv, Time now) {
  return now >= iv.lower && (!iv.upper || now <= *iv.upper);
}

// Op phi :: chi
struct ContextualFormula {
  IntervalOp op;
  Conjunction phi;
  Conjunction context;

  friend bool operator==(const ContextualFormula&, const ContextualFormula&) = default;
};

enum class CoreVerdict : std::uint8_t { HoldsSoFar, HoldsFinal, ViolatedNow, Vacuous };

const char* to_string(CoreVerdict v);

struct Evaluation {
  // For ALWAYS/EVENTUALLY: phi has a satisfying instance. For NEVER: phi has
  // a satisfying instance too, which is the violation signal.
  bool target = false;
  // False when the context has no solution; phi was not checked.
  bool context_found = true;
  Binding binding;
};

// Context first (first solution wins), then phi under that binding.
Evaluation eval_once(const ContextualFormula& f, const FactBase& kb, const Binding& seed = {});

// Next verdict after one due check at `now`.
CoreVerdict step_core(const ResolvedInterval& iv, bool holds_now, Time now);

// Verdict once `now` has passed the upper bound with no decision reached:
// ALWAYS/NEVER hold, EVENTUALLY is violated. Unbounded intervals stay open.
CoreVerdict close_core(const ResolvedInterval& iv, Time now);

inline bool is_final(CoreVerdict v) { return v == CoreVerdict::HoldsFinal || v == CoreVerdict::ViolatedNow; }

// --- reactions ---

// `atom :< precondition`
struct ActionElem {
  Term atom;
  Conjunction precondition;

  friend bool operator==(const ActionElem&, const ActionElem&) = default;
};

// `Var IN {a, b, c : preference}`
struct ChoiceElem {
  std::string variable;
  std::vector<Term> options;
  std::string preference;

  friend bool operator==(const ChoiceElem&, const ChoiceElem&) = default;
};

using ReactionElem = std::variant<ActionElem, ChoiceElem>;
using Reaction = std::vector<ReactionElem>;

std::string render(const Reaction& r);

struct ReactiveRule {
  ContextualFormula monitor;
  Reaction reaction;

  friend bool operator==(const ReactiveRule&, const ReactiveRule&) = default;
};

// Cost evaluators for preference choices. A table maps candidates to costs;
// a function may compute costs from the current store instead.
using CostFunction = std::function<std::optional<std::int64_t>(const Term& candidate, const FactBase& kb)>;

class CostRegistry {
public:
  void set_cost(const std::string& preference, const Term& candidate, std::int64_t cost);
  void set_function(const std::string& preference, CostFunction fn);
  bool has(const std::string& preference) const;

  // Member with minimum cost; ties go to the earlier option. Throws
  // UnresolvedPreference if the preference is unknown or no option is priced.
  Term select(const ChoiceElem& choice, const FactBase& kb) const;

  const std::map<std::string, std::vector<std::pair<Term, std::int64_t>>>& tables() const { return tables_; }

private:
  std::map<std::string, std::vector<std::pair<Term, std::int64_t>>> tables_;
  std::map<std::string, CostFunction> functions_;
};

struct Emission {
  EventKind kind = EventKind::Action;
  Term payload;

  friend bool operator==(const Emission&, const Emission&) = default;
};

// Atom as written to (kind, payload): a kind postfix selects the kind and is
// stripped; unsuffixed atoms are actions.
Emission emission_of(const Term& ground_atom);

// Resolves choices, then emits every action whose precondition holds, in
// order. Elements with a failing precondition are skipped.
std::vector<Emission> fire_reaction(const Reaction& r, const FactBase& kb, const Binding& binding,
                                    const CostRegistry& costs);

}  // namespace ailtl
