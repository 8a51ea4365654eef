#include "ailtl/patterns.hpp"

#include <algorithm>

namespace ailtl {

PatternElem::PatternElem(Term written, Quantifier q) : written_(std::move(written)), quant_(q) {
  payload_ = written_;
  if (auto split = split_kind_suffix(written_.name()); split && written_.is_callable()) {
    kind_ = split->second;
    payload_ = Term::compound(split->first, written_.args());
  }
}

bool PatternElem::accepts_kind(EventKind k) const noexcept {
  if (!kind_ || *kind_ == EventKind::Past) return true;
  return *kind_ == k;
}

bool match_event(const PatternElem& el, const Event& ev, Binding& b, const FactBase* kb) {
  if (!el.accepts_kind(ev.kind)) return false;
  Binding direct = b;
  if (match(el.payload_template(), ev.payload, direct)) {
    b = std::move(direct);
    return true;
  }
  const Term& tmpl = el.payload_template();
  if (kb == nullptr || el.kind_filter() || !tmpl.is_compound() || tmpl.arity() != 1) return false;
  Binding classified = b;
  if (!match(tmpl.args()[0], ev.payload, classified)) return false;
  if (!kb->contains(Term::compound(tmpl.name(), {ev.payload}))) return false;
  b = std::move(classified);
  return true;
}

const char* to_string(MatchResult::Kind k) {
  switch (k) {
    case MatchResult::Kind::NoEvents: return "NoEvents";
    case MatchResult::Kind::Prefix: return "Prefix";
    case MatchResult::Kind::Complete: return "Complete";
    case MatchResult::Kind::Mismatch: return "Mismatch";
  }
  return "?";
}

namespace {

// NFA configuration: element under consideration, whether it has matched at
// least once, and the binding accumulated so far.
struct Config {
  std::size_t elem;
  bool matched;
  Binding binding;

  friend bool operator==(const Config&, const Config&) = default;
};

bool satisfied(const PatternSeq& p, const Config& c) {
  return p[c.elem].quantifier() == Quantifier::Star || c.matched;
}

void add_closed(const PatternSeq& p, std::vector<Config>& out, Config c) {
  while (true) {
    if (std::find(out.begin(), out.end(), c) != out.end()) return;
    out.push_back(c);
    if (c.elem >= p.size() || !satisfied(p, c)) return;
    c = Config{c.elem + 1, false, c.binding};
  }
}

bool relevant(const PatternSeq& p, const Event& ev, const Binding& seed, const FactBase* kb) {
  return std::any_of(p.begin(), p.end(), [&](const PatternElem& el) {
    Binding b = seed;
    return match_event(el, ev, b, kb);
  });
}

}  // namespace

MatchResult match_prefix(const PatternSeq& p, const History& h, Time since, const Binding& seed,
                         const FactBase* kb) {
  MatchResult result;
  if (p.empty()) return result;

  std::vector<Config> configs;
  add_closed(p, configs, Config{0, false, seed});

  const auto& log = h.log();
  std::size_t seen = 0;
  for (std::size_t i = h.lower_bound(since); i < log.size(); ++i) {
    const Event& ev = log[i];
    if (!relevant(p, ev, seed, kb)) continue;

    std::vector<Config> next;
    for (const auto& c : configs) {
      if (c.elem >= p.size()) continue;
      const PatternElem& el = p[c.elem];
      if (el.quantifier() == Quantifier::One && c.matched) continue;
      Binding b = c.binding;
      // Wildcards never bind, so repetitions see fresh wildcards while
      // named variables keep their first binding.
      if (match_event(el, ev, b, kb)) add_closed(p, next, Config{c.elem, true, std::move(b)});
    }
    if (next.empty()) {
      result.kind = MatchResult::Kind::Mismatch;
      result.at = seen;
      result.event = ev;
      return result;
    }
    configs = std::move(next);
    result.event = ev;
    ++seen;
  }

  if (seen == 0) return result;

  const Config* best = nullptr;
  for (const auto& c : configs) {
    if (c.elem == p.size()) {
      result.kind = MatchResult::Kind::Complete;
      result.consumed = p.size();
      result.binding = c.binding;
      return result;
    }
    std::size_t done = c.elem + (satisfied(p, c) ? 1 : 0);
    if (best == nullptr || done > result.consumed) {
      best = &c;
      result.consumed = done;
    }
  }
  result.kind = MatchResult::Kind::Prefix;
  result.binding = best->binding;
  return result;
}

std::vector<Occurrence> occurrences(const PatternSeq& p, const History& h, Time since, const Binding& seed,
                                    const FactBase* kb) {
  std::vector<Occurrence> out;
  const auto& log = h.log();
  for (std::size_t i = h.lower_bound(since); i < log.size(); ++i) {
    for (const auto& el : p) {
      Binding b = seed;
      if (match_event(el, log[i], b, kb)) {
        out.push_back(Occurrence{i, log[i], std::move(b)});
        break;
      }
    }
  }
  return out;
}

std::optional<Occurrence> occurs_any(const PatternSeq& p, const History& h, Time since, const Binding& seed,
                                     const FactBase* kb) {
  const auto& log = h.log();
  for (std::size_t i = h.lower_bound(since); i < log.size(); ++i) {
    for (const auto& el : p) {
      Binding b = seed;
      if (match_event(el, log[i], b, kb)) return Occurrence{i, log[i], std::move(b)};
    }
  }
  return std::nullopt;
}

std::string render(const PatternElem& el) {
  // Quantifier sits between functor and arguments: `push_P+(R,Q)`.
  const Term& t = el.written();
  std::string out = t.is_callable() ? t.name() : render(t);
  if (el.quantifier() == Quantifier::Plus) out += '+';
  if (el.quantifier() == Quantifier::Star) out += '*';
  if (t.is_compound()) {
    std::string whole = render(t);
    out += whole.substr(t.name().size());
  }
  return out;
}

std::string render(const PatternSeq& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += render(p[i]);
  }
  return out;
}

}  // namespace ailtl
