#pragma once

#include "ailtl/events.hpp"
#include "ailtl/kb.hpp"
#include "ailtl/term.hpp"

#include <optional>
#include <vector>

namespace ailtl {

enum class Quantifier : std::uint8_t { One, Plus, Star };

// One element of an event-sequence pattern, e.g. `push_P+(Req,Q)`.
//
// The functor postfix selects the event kind: `_P` accepts every recorded
// event (all of them are past once logged), the other letters accept that
// kind only, and an unsuffixed functor accepts any kind. An unsuffixed unary
// element `c(X)` also matches an event whose payload is classified by a
// stored fact `c(payload)`, binding X to the payload.
class PatternElem {
public:
  PatternElem() = default;
  PatternElem(Term written, Quantifier q);

  const Term& written() const noexcept { return written_; }
  Quantifier quantifier() const noexcept { return quant_; }
  std::optional<EventKind> kind_filter() const noexcept { return kind_; }
  const Term& payload_template() const noexcept { return payload_; }

  bool accepts_kind(EventKind k) const noexcept;

  friend bool operator==(const PatternElem& a, const PatternElem& b) {
    return a.written_ == b.written_ && a.quant_ == b.quant_;
  }

private:
  Term written_;
  Quantifier quant_ = Quantifier::One;
  std::optional<EventKind> kind_;
  Term payload_;
};

using PatternSeq = std::vector<PatternElem>;

// Matches one event against one element, extending `b`. `kb` enables
// classifier elements and may be null.
bool match_event(const PatternElem& el, const Event& ev, Binding& b, const FactBase* kb);

struct MatchResult {
  enum class Kind : std::uint8_t { NoEvents, Prefix, Complete, Mismatch };

  Kind kind = Kind::NoEvents;
  // Pattern elements satisfied so far (Prefix/Complete).
  std::size_t consumed = 0;
  // Position, among relevant events, of the first one that broke the order.
  std::size_t at = 0;
  Binding binding;
  // Last consumed relevant event, or the offending one on Mismatch.
  std::optional<Event> event;
};

const char* to_string(MatchResult::Kind k);

// Scans events at or after `since`. Events that unify with no element under
// `seed` are irrelevant and skipped; the remaining ones must spell a prefix
// of the pattern in timestamp order.
MatchResult match_prefix(const PatternSeq& p, const History& h, Time since, const Binding& seed = {},
                         const FactBase* kb = nullptr);

struct Occurrence {
  std::size_t position = 0;  // index into History::log()
  Event event;
  Binding binding;
};

// Every logged event at or after `since` that unifies with some element.
std::vector<Occurrence> occurrences(const PatternSeq& p, const History& h, Time since, const Binding& seed = {},
                                    const FactBase* kb = nullptr);

// Earliest such event.
std::optional<Occurrence> occurs_any(const PatternSeq& p, const History& h, Time since, const Binding& seed = {},
                                     const FactBase* kb = nullptr);

std::string render(const PatternElem& el);
std::string render(const PatternSeq& p);

}  // namespace ailtl
