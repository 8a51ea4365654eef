#include "ailtl/events.hpp"

#include "ailtl/error.hpp"

#include <algorithm>

namespace ailtl {

char kind_letter(EventKind k) {
  switch (k) {
    case EventKind::External: return 'E';
    case EventKind::Internal: return 'I';
    case EventKind::Present: return 'N';
    case EventKind::Past: return 'P';
    case EventKind::Action: return 'A';
    case EventKind::Goal: return 'G';
  }
  return '?';
}

std::optional<EventKind> kind_from_letter(char c) {
  switch (c) {
    case 'E': return EventKind::External;
    case 'I': return EventKind::Internal;
    case 'N': return EventKind::Present;
    case 'P': return EventKind::Past;
    case 'A': return EventKind::Action;
    case 'G': return EventKind::Goal;
    default: return std::nullopt;
  }
}

std::optional<std::pair<std::string, EventKind>> split_kind_suffix(std::string_view functor) {
  if (functor.size() < 3 || functor[functor.size() - 2] != '_') return std::nullopt;
  auto kind = kind_from_letter(functor.back());
  if (!kind) return std::nullopt;
  return std::make_pair(std::string(functor.substr(0, functor.size() - 2)), *kind);
}

std::string with_kind_suffix(const std::string& functor, EventKind k) {
  return functor + '_' + kind_letter(k);
}

std::string render(const Event& e) {
  return std::to_string(e.timestamp) + ' ' + kind_letter(e.kind) + ' ' + render(e.payload);
}

EventKey key_of(const Event& e) { return {e.kind, e.payload.name(), e.payload.arity()}; }

std::optional<Event> History::record(const Event& e) {
  if (!e.payload.is_ground() || !e.payload.is_callable())
    throw Error(ErrorCode::InvalidArgument, "event payload must be a ground atom: " + render(e.payload));
  if (e.timestamp < 0) throw Error(ErrorCode::InvalidArgument, "negative timestamp");
  if (!log_.empty() && e.timestamp < log_.back().timestamp)
    throw Error(ErrorCode::TimestampRegression,
                std::to_string(e.timestamp) + " after " + std::to_string(log_.back().timestamp));
  log_.push_back(e);

  std::optional<Event> superseded;
  auto [it, inserted] = current_.try_emplace(key_of(e), e);
  if (!inserted) {
    superseded = it->second;
    archive_.push_back(it->second);
    it->second = e;
    if (auto r = retention_.find(e.payload.name()); r != retention_.end()) {
      std::size_t kept = std::count_if(archive_.begin(), archive_.end(), [&](const Event& a) {
        return a.payload.name() == e.payload.name();
      });
      for (auto a = archive_.begin(); kept > r->second && a != archive_.end();) {
        if (a->payload.name() == e.payload.name()) {
          a = archive_.erase(a);
          --kept;
        } else {
          ++a;
        }
      }
    }
  }
  return superseded;
}

std::optional<Event> History::latest(EventKind kind, const std::string& functor, std::size_t arity) const {
  auto it = current_.find(EventKey{kind, functor, arity});
  if (it == current_.end()) return std::nullopt;
  return it->second;
}

std::size_t History::lower_bound(Time t) const {
  auto it = std::lower_bound(log_.begin(), log_.end(), t,
                             [](const Event& e, Time v) { return e.timestamp < v; });
  return static_cast<std::size_t>(it - log_.begin());
}

bool StateSequence::advance(Time now, bool dirty) {
  const TimedState& cur = states_.back();
  if (now < cur.time)
    throw Error(ErrorCode::InvalidArgument,
                "state time " + std::to_string(now) + " precedes " + std::to_string(cur.time));
  if (!dirty) return false;
  states_.push_back(TimedState{cur.index + 1, now, cur.revision + 1});
  return true;
}

}  // namespace ailtl
