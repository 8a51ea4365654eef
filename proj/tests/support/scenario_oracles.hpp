#pragma once

// Straight-line expected reports for the generated scenarios. Each oracle
// reads the trace text itself and walks it tick by tick with the scenario's
// constants written out by hand; nothing here calls into the engine.

#include "ailtl/runtime.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scen {

using namespace ailtl;

// Flat reader for the payloads the generators write: symbols, integers and
// nested compounds.
inline Term term(const std::string& s, std::size_t& i) {
  std::size_t j = i;
  while (j < s.size() && s[j] != '(' && s[j] != ',' && s[j] != ')') ++j;
  const std::string head = s.substr(i, j - i);
  i = j;
  const bool numeric = !head.empty() && (std::isdigit(static_cast<unsigned char>(head[0])) || head[0] == '-');
  if (i < s.size() && s[i] == '(') {
    std::vector<Term> args;
    do {
      ++i;
      args.push_back(term(s, i));
    } while (s[i] == ',');
    ++i;
    return Term::compound(head, std::move(args));
  }
  return numeric ? Term::integer(std::stoll(head)) : Term::symbol(head);
}

inline Term term(const std::string& s) {
  std::size_t i = 0;
  return term(s, i);
}

inline EventKind kind_of(char c) {
  switch (c) {
    case 'A': return EventKind::Action;
    case 'N': return EventKind::Present;
    case 'E': return EventKind::External;
    case 'I': return EventKind::Internal;
    case 'G': return EventKind::Goal;
    default: return EventKind::Past;
  }
}

struct Line {
  Time t = 0;
  EventKind kind = EventKind::Action;
  std::string functor;
  Term payload;
};

inline std::vector<Line> read_trace(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l.empty() || l[0] == '#') continue;
    std::istringstream ls(l);
    Line line;
    char k = 0;
    std::string p;
    ls >> line.t >> k >> p;
    line.kind = kind_of(k);
    line.payload = term(p);
    line.functor = line.payload.name();
    out.push_back(std::move(line));
  }
  return out;
}

inline std::int64_t arg(const Line& l, std::size_t i) { return l.payload.args()[i].value(); }

inline Binding binding(std::initializer_list<std::pair<const char*, Term>> kv) {
  Binding b;
  for (const auto& [k, v] : kv) b.bind(k, v);
  return b;
}

inline std::string text(const Binding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : b.entries()) {
    if (!first) out += ",";
    first = false;
    out += k + "=" + render(v);
  }
  return out + "}";
}

using Decide = std::function<GateDecision(Time, const Term&)>;

inline GateDecision ungated(Time, const Term&) { return GateDecision::NoRulesApply; }

// Actions are gated when ingested: each tick first takes the previous tick's
// emissions, then its own trace lines; emissions of the last tick arrive
// after the loop, still stamped with the last tick.
inline std::vector<GateRecord> gates(const std::vector<Line>& trace, const std::vector<EmissionRecord>& emitted,
                                     Time end, const Decide& decide) {
  std::vector<GateRecord> out;
  auto take = [&](Time at, EventKind k, const Term& p) {
    if (k == EventKind::Action) out.push_back(GateRecord{at, k, p, decide(at, p)});
  };
  std::size_t next = 0;
  for (Time t = 0; t <= end; ++t) {
    for (const auto& e : emitted)
      if (e.time == t - 1) take(t, e.emission.kind, e.emission.payload);
    for (; next < trace.size() && trace[next].t == t; ++next) take(t, trace[next].kind, trace[next].payload);
  }
  for (const auto& e : emitted)
    if (e.time == end) take(end, e.emission.kind, e.emission.payload);
  return out;
}

inline Time last_tick(const std::vector<Line>& trace) { return trace.empty() ? 0 : trace.back().t; }

inline TransitionRecord change(Time t, const std::string& id, std::size_t n, ExprStatus from, ExprStatus to,
                             std::string cause) {
  return TransitionRecord{t, id, n, from, to, std::move(cause)};
}

inline EmissionRecord emit(Time t, const std::string& id, std::size_t n, Provenance p, EventKind k, Term payload) {
  return EmissionRecord{t, id, n, p, Emission{k, std::move(payload)}};
}

// Latest integer argument of `functor` at or before t.
inline std::optional<std::int64_t> latest(const std::vector<Line>& trace, const std::string& functor, Time t,
                                          std::size_t i) {
  std::optional<std::int64_t> v;
  for (const auto& l : trace)
    if (l.t <= t && l.functor == functor) v = arg(l, i);
  return v;
}

inline std::string cheapest(const std::map<std::string, std::int64_t>& table) {
  return std::min_element(table.begin(), table.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;
}

// Battery: recharge at 5 opens a six-hour watch (0..360 after the recharge,
// every 10 ticks) of charge > 20; dry_water or climb_stairs breaks it.
inline Report battery(const std::string& trace_text) {
  const auto trace = read_trace(trace_text);
  const std::string id = "expr.1";
  const std::int64_t low = 20;
  Report r;
  r.end = std::max<Time>(400, last_tick(trace));

  Time armed = -1;
  for (const auto& l : trace)
    if (l.functor == "recharge_battery" && l.kind == EventKind::Action) {
      armed = l.t;
      break;
    }
  FinalRecord first{id, 1, ExprStatus::Dormant, {}, 0};
  bool clone = false;
  if (armed >= 0) {
    r.transitions.push_back(change(armed, id, 1, ExprStatus::Dormant, ExprStatus::Armed, "recharge_battery"));
    ExprStatus st = ExprStatus::Armed;
    std::int64_t last_level = 0;
    for (Time t = armed; t <= r.end && st != ExprStatus::Violated && st != ExprStatus::Broken &&
                         st != ExprStatus::Fulfilled;
         ++t) {
      std::string breaker;
      for (const auto& l : trace)
        if (l.t == t && l.kind == EventKind::Action && (l.functor == "dry_water" || l.functor == "climb_stairs"))
          breaker = l.functor;
      if (!breaker.empty()) {
        r.transitions.push_back(change(t, id, 1, st, ExprStatus::Broken, breaker));
        r.emissions.push_back(emit(t, id, 1, Provenance::Eta2, EventKind::Goal, Term::symbol("recharge_battery")));
        st = ExprStatus::Broken;
        first.binding = binding({{"Act", Term::symbol(breaker)}});
        break;
      }
      if (t > armed + 360 || (t - armed) % 10 != 0) continue;
      ++first.evaluations;
      const std::int64_t level = *latest(trace, "charge_level", t, 0);
      if (level <= low) {
        first.binding = binding({{"Low", Term::integer(low)}});
        r.transitions.push_back(change(t, id, 1, st, ExprStatus::Violated, text(first.binding)));
        r.emissions.push_back(
            emit(t, id, 1, Provenance::Repair, EventKind::Action, Term::symbol("stop_robot_operation")));
        r.emissions.push_back(
            emit(t, id, 1, Provenance::Eta1, EventKind::Action, Term::symbol("alert_user_possible_fault")));
        st = ExprStatus::Violated;
      } else if (t == armed + 360) {
        r.transitions.push_back(change(t, id, 1, st, ExprStatus::Fulfilled, "interval_end"));
        st = ExprStatus::Fulfilled;
      } else if (st == ExprStatus::Armed) {
        r.transitions.push_back(change(t, id, 1, st, ExprStatus::Holding, "check"));
        st = ExprStatus::Holding;
      }
      last_level = level;
    }
    if (st == ExprStatus::Fulfilled)
      first.binding = binding({{"L", Term::integer(last_level)}, {"Low", Term::integer(low)}});
    first.status = st;
    clone = st == ExprStatus::Violated || st == ExprStatus::Broken;
  }
  r.gates = gates(trace, r.emissions, r.end, ungated);
  r.finals.push_back(first);
  if (clone) r.finals.push_back(FinalRecord{id, 2, ExprStatus::Dormant, {}, 0});
  return r;
}

// Supply: after the first supply of r, the quantity of r must never drop
// below the threshold 5 once something has been consumed.
inline Report supply(const std::string& trace_text, bool soft) {
  const auto trace = read_trace(trace_text);
  const std::string id = "expr.1";
  const std::int64_t threshold = 5;
  Report r;
  r.end = last_tick(trace);

  const Line* first_supply = nullptr;
  for (const auto& l : trace)
    if (l.functor == "supply") {
      first_supply = &l;
      break;
    }
  if (!first_supply) throw std::logic_error("supply trace without supplies");
  const Time armed = first_supply->t;
  r.transitions.push_back(change(armed, id, 1, ExprStatus::Dormant, ExprStatus::Armed, render(first_supply->payload)));

  FinalRecord first{id, 1, ExprStatus::FulfilledSoFar, {}, 0};
  ExprStatus st = ExprStatus::Armed;
  for (Time t = armed; t <= r.end; ++t) {
    ++first.evaluations;
    auto consumed = latest(trace, "consume", t, 1);
    if (!consumed) continue;
    const std::int64_t v = *latest(trace, "quantity", t, 1);
    if (v < threshold) {
      first.binding = binding({{"Q", Term::integer(*consumed)}, {"Th", Term::integer(threshold)}, {"V", Term::integer(v)}});
      r.transitions.push_back(change(t, id, 1, st, ExprStatus::Violated, text(first.binding)));
      auto res = Term::symbol("r");
      if (soft) {
        r.emissions.push_back(emit(t, id, 1, Provenance::Repair, EventKind::Action, Term::compound("reorder", {res})));
        r.emissions.push_back(emit(t, id, 1, Provenance::Eta1, EventKind::Action,
                                   Term::compound("soft_limit_reached", {res, Term::integer(v)})));
      } else {
        r.emissions.push_back(emit(t, id, 1, Provenance::Repair, EventKind::Action,
                                   Term::compound("block", {Term::compound("consume", {res, Term::integer(*consumed)})})));
      }
      st = ExprStatus::Violated;
      break;
    }
    if (st == ExprStatus::Armed) {
      r.transitions.push_back(change(t, id, 1, st, ExprStatus::Holding, "check"));
      st = ExprStatus::Holding;
    }
  }
  if (st != ExprStatus::Violated) throw std::logic_error("supply trace never crosses the threshold");
  first.status = st;
  r.gates = gates(trace, r.emissions, r.end, ungated);
  r.finals.push_back(first);
  r.finals.push_back(FinalRecord{id, 2, ExprStatus::Dormant, {}, 0});
  return r;
}

// Temperature: from 8:00 to 17:00, every 10 minutes, the latest reading must
// lie in [19,21]; each miss switches to the cheapest source and the watch
// restarts on the next tick.
inline Report temperature(const std::string& trace_text) {
  const auto trace = read_trace(trace_text);
  const std::string id = "rule.1";
  const Time lower = 8 * 60, upper = 17 * 60, step = 10;
  const std::string source = cheapest({{"ext", 3}, {"gas", 2}, {"solar", 1}});
  Report r;
  r.end = last_tick(trace);

  std::size_t n = 1;
  Time since = 0;
  while (true) {
    r.transitions.push_back(change(since, id, n, ExprStatus::Dormant, ExprStatus::Armed, "start"));
    FinalRecord fin{id, n, ExprStatus::Armed, {}, 0};
    ExprStatus st = ExprStatus::Armed;
    Time violated_at = -1;
    for (Time t = std::max(since, lower); t <= upper; ++t) {
      if ((t - lower) % step != 0) continue;
      ++fin.evaluations;
      const std::int64_t v = *latest(trace, "temperature", t, 0);
      fin.binding = binding({{"T", Term::integer(v)}});
      if (v < 19 || v > 21) {
        r.transitions.push_back(change(t, id, n, st, ExprStatus::Violated, text(fin.binding)));
        r.emissions.push_back(emit(t, id, n, Provenance::Reactive, EventKind::Action,
                                   Term::compound("modify_temperature", {Term::symbol(source)})));
        st = ExprStatus::Violated;
        violated_at = t;
        break;
      }
      if (t == upper) {
        r.transitions.push_back(change(t, id, n, st, ExprStatus::Fulfilled, "interval_end"));
        st = ExprStatus::Fulfilled;
      } else if (st == ExprStatus::Armed) {
        r.transitions.push_back(change(t, id, n, st, ExprStatus::Holding, "check"));
        st = ExprStatus::Holding;
      }
    }
    fin.status = st;
    r.finals.push_back(fin);
    if (violated_at < 0 || violated_at >= upper) break;
    since = violated_at + 1;
    ++n;
  }
  r.gates = gates(trace, r.emissions, r.end, ungated);
  return r;
}

// Ambulance: after a call to D, arrived(D) must happen within 60 ticks; a
// blocked road triggers the fastest alternative transport.
inline Report ambulance(const std::string& trace_text) {
  const auto trace = read_trace(trace_text);
  const std::string id = "expr.1";
  const std::string transport = cheapest({{"elicopter", 12}, {"boat", 20}});
  Report r;
  r.end = last_tick(trace);

  const Line& call = trace.front();
  const Time armed = call.t;
  const Term dest = call.payload.args()[0];
  FinalRecord first{id, 1, ExprStatus::Holding, binding({{"D", dest}}), 0};
  r.transitions.push_back(change(armed, id, 1, ExprStatus::Dormant, ExprStatus::Armed, render(call.payload)));
  ExprStatus st = ExprStatus::Armed;
  for (Time t = armed; t <= std::min(r.end, armed + 60); ++t) {
    for (const auto& l : trace)
      if (l.t == t && l.functor == "ambulance_blocked" && l.payload.args()[0] == dest)
        r.emissions.push_back(emit(t, id, 1, Provenance::Eta3, EventKind::Action,
                                   Term::compound("alternative_transportation", {Term::symbol(transport)})));
    ++first.evaluations;
    bool arrived = false;
    for (const auto& l : trace) arrived = arrived || (l.t <= t && l.functor == "arrived" && l.payload.args()[0] == dest);
    if (arrived) {
      r.transitions.push_back(change(t, id, 1, st, ExprStatus::Fulfilled, text(first.binding)));
      st = ExprStatus::Fulfilled;
      break;
    }
    if (t == armed + 60) {
      r.transitions.push_back(change(t, id, 1, st, ExprStatus::Violated, text(first.binding)));
      st = ExprStatus::Violated;
      break;
    }
    if (st == ExprStatus::Armed) {
      r.transitions.push_back(change(t, id, 1, st, ExprStatus::Holding, "check"));
      st = ExprStatus::Holding;
    }
  }
  first.status = st;
  r.gates = gates(trace, r.emissions, r.end, ungated);
  r.finals.push_back(first);
  if (st == ExprStatus::Violated) r.finals.push_back(FinalRecord{id, 2, ExprStatus::Dormant, {}, 0});
  return r;
}

// Ethics: an action is confirmed when the current context and role allow it
// and it is ethical there, unless the context has an ethical exception for it.
inline Report ethics(const std::string& trace_text) {
  const auto trace = read_trace(trace_text);
  // context, role, action -> allowed, ethical
  const std::map<std::tuple<std::string, std::string, std::string>, std::pair<bool, bool>> matrix = {
      {{"video_game", "player", "shoot"}, {true, true}},   {{"video_game", "player", "shout"}, {true, true}},
      {{"video_game", "player", "call_police"}, {true, true}}, {{"role_game", "player", "shoot"}, {true, false}},
      {{"role_game", "player", "shout"}, {true, true}},    {{"role_game", "player", "call_police"}, {true, true}},
      {{"reality", "citizen", "shoot"}, {false, false}},   {{"reality", "citizen", "shout"}, {true, true}},
      {{"reality", "citizen", "call_police"}, {true, true}}, {{"reality", "police", "shoot"}, {true, true}},
      {{"reality", "police", "shout"}, {true, true}},      {{"reality", "police", "call_police"}, {false, false}},
  };
  Report r;
  r.end = last_tick(trace);
  std::string context, role;
  std::set<std::pair<std::string, std::string>> exceptions;
  for (const auto& l : trace) {
    if (l.functor == "context") {
      context = l.payload.args()[0].name();
      role = l.payload.args()[1].name();
      continue;
    }
    GateDecision d = GateDecision::NoRulesApply;
    if (l.functor == "execute_action") {
      const std::string act = l.payload.args()[0].name();
      auto it = matrix.find({context, role, act});
      const bool ok = it != matrix.end() && it->second.first && it->second.second;
      if (!ok) d = GateDecision::BlockedBySolveFail;
      else if (exceptions.count({context, act})) d = GateDecision::BlockedBySolveNot;
      else d = GateDecision::Confirmed;
    } else if (l.functor == "assert") {
      const Term& f = l.payload.args()[0];
      exceptions.insert({f.args()[0].name(), f.args()[1].name()});
    }
    r.gates.push_back(GateRecord{l.t, l.kind, l.payload, d});
  }
  return r;
}

// Queue with the duplicate guard: a push, and its in_queue assertion, is
// blocked while the item is already queued; the never-duplicated constraint
// then just holds.
inline Report queue(const std::string& trace_text) {
  const auto trace = read_trace(trace_text);
  const std::string id = "expr.1";
  Report r;
  r.end = last_tick(trace);
  const Line& push = trace.front();
  r.transitions.push_back(change(push.t, id, 1, ExprStatus::Dormant, ExprStatus::Armed, render(push.payload)));
  r.transitions.push_back(change(push.t, id, 1, ExprStatus::Armed, ExprStatus::Holding, "check"));
  std::set<std::int64_t> queued;
  for (const auto& l : trace) {
    GateDecision d = GateDecision::NoRulesApply;
    if (l.functor == "push") {
      d = queued.count(arg(l, 0)) ? GateDecision::BlockedBySolveNot : GateDecision::Confirmed;
    } else if (l.functor == "assert") {
      const std::int64_t item = l.payload.args()[0].args()[1].value();
      d = queued.count(item) ? GateDecision::BlockedBySolveNot : GateDecision::Confirmed;
      queued.insert(item);
    } else if (l.functor == "retract") {
      queued.erase(l.payload.args()[0].args()[1].value());
    }
    r.gates.push_back(GateRecord{l.t, l.kind, l.payload, d});
  }
  r.finals.push_back(FinalRecord{id, 1, ExprStatus::FulfilledSoFar, binding({{"Q", push.payload.args()[1]}}),
                                 static_cast<std::size_t>(r.end - push.t + 1)});
  return r;
}

// Set-based count of pushes whose item is already in the queue.
inline std::size_t duplicate_pushes(const std::string& trace_text, std::vector<std::int64_t>* items = nullptr) {
  std::set<std::int64_t> seen;
  std::size_t dups = 0;
  for (const auto& l : read_trace(trace_text))
    if (l.functor == "push" && !seen.insert(arg(l, 0)).second) {
      ++dups;
      if (items) items->push_back(arg(l, 0));
    }
  return dups;
}

}  // namespace scen
