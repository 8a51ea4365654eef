#pragma once

#include "ailtl/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace ailtl {

enum class EventKind : std::uint8_t { External, Internal, Present, Past, Action, Goal };

// Letters used in trace files and as functor postfixes: E I N P A G.
char kind_letter(EventKind k);
std::optional<EventKind> kind_from_letter(char c);

// Splits a functor like `push_P` into (`push`, Past). Functors without a
// recognised postfix return nullopt and are left untouched.
std::optional<std::pair<std::string, EventKind>> split_kind_suffix(std::string_view functor);
std::string with_kind_suffix(const std::string& functor, EventKind k);

struct Event {
  EventKind kind = EventKind::External;
  Term payload;
  Time timestamp = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

// `<timestamp> <letter> <term>`
std::string render(const Event& e);

struct EventKey {
  EventKind kind;
  std::string functor;
  std::size_t arity;

  friend auto operator<=>(const EventKey&, const EventKey&) = default;
};

EventKey key_of(const Event& e);

// Agent memory: P (latest version per key), PNV (superseded versions) and
// the full log in (timestamp, arrival) order.
class History {
public:
  // Throws TimestampRegression when e is older than the last logged event.
  // Returns the superseded entry, if any.
  std::optional<Event> record(const Event& e);

  std::optional<Event> latest(EventKind kind, const std::string& functor, std::size_t arity) const;

  const std::vector<Event>& log() const noexcept { return log_; }
  const std::map<EventKey, Event>& current() const noexcept { return current_; }
  const std::vector<Event>& archive() const noexcept { return archive_; }

  // Keep at most `limit` archived versions per functor; oldest dropped first.
  void set_retention(const std::string& functor, std::size_t limit) { retention_[functor] = limit; }

  // First log position whose timestamp is >= t.
  std::size_t lower_bound(Time t) const;

private:
  std::vector<Event> log_;
  std::map<EventKey, Event> current_;
  std::vector<Event> archive_;
  std::map<std::string, std::size_t> retention_;
};

// One state of the timed state sequence. `revision` identifies the
// snapshot; consecutive states always carry distinct revisions.
struct TimedState {
  std::size_t index = 0;
  Time time = 0;
  std::uint64_t revision = 0;
};

class StateSequence {
public:
  // Starts with state 0 at time 0, revision 0.
  StateSequence() : states_{TimedState{}} {}

  // Appends a state only when the snapshot changed since the last state.
  // Throws InvalidArgument if now precedes the current state time.
  bool advance(Time now, bool dirty);

  const TimedState& current() const noexcept { return states_.back(); }
  const std::vector<TimedState>& states() const noexcept { return states_; }

private:
  std::vector<TimedState> states_;
};

}  // namespace ailtl
