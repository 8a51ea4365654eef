#pragma once

#include "ailtl/events.hpp"
#include "ailtl/evolutionary.hpp"
#include "ailtl/metagate.hpp"
#include "ailtl/temporal.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ailtl {

// `preference(candidate) = cost.`
struct CostRow {
  std::string preference;
  Term candidate;
  std::int64_t cost = 0;

  friend bool operator==(const CostRow&, const CostRow&) = default;
};

// `config:` section. Unset keys fall back to engine defaults.
struct ProgramConfig {
  std::optional<std::int64_t> default_frequency;
  std::optional<std::int64_t> ticks_per_minute;
  std::optional<std::int64_t> end;
  std::optional<std::int64_t> emission_cap;
  std::optional<std::string> tick_scale;

  friend bool operator==(const ProgramConfig&, const ProgramConfig&) = default;
};

struct Program {
  std::vector<Term> facts;
  std::vector<MetaRule> meta;
  std::vector<ReactiveRule> rules;
  std::vector<EvolutionaryExpr> exprs;
  std::vector<CostRow> costs;
  ProgramConfig config;

  friend bool operator==(const Program&, const Program&) = default;
};

// Throws ParseError.
Program parse_program(std::string_view text);
std::string render(const Program& p);
std::string render(const EvolutionaryExpr& x);
std::string render(const ReactiveRule& r);
std::string render(const ContextualFormula& f);

// Single-term helpers used by tests and tools.
Term parse_term(std::string_view text);
PatternSeq parse_patterns(std::string_view text);
Conjunction parse_conjunction(std::string_view text);

// `<timestamp> <kind letter> <ground term>` per line, `#` comments. Throws
// ParseError on malformed lines and Error(TimestampRegression) when a
// timestamp goes backwards.
std::vector<Event> parse_trace(std::string_view text);
std::string render_trace(const std::vector<Event>& events);

}  // namespace ailtl
