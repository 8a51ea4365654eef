#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ailtl {

using Time = std::int64_t;

// First-order term shared by facts, events, formulas and reactions.
//
// Symbols and compounds are distinct kinds: `p` is a Symbol, `p(a)` a
// Compound. Variables start with an uppercase letter, wildcards with `_`.
// Wildcards match anything and never bind.
class Term {
public:
  enum class Kind : std::uint8_t { Symbol, Integer, Variable, Wildcard, Compound };

  Term() = default;

  static Term symbol(std::string name);
  static Term integer(std::int64_t value);
  static Term variable(std::string name);
  static Term wildcard(std::string name = "_");
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const noexcept { return kind_; }
  bool is_symbol() const noexcept { return kind_ == Kind::Symbol; }
  bool is_integer() const noexcept { return kind_ == Kind::Integer; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_wildcard() const noexcept { return kind_ == Kind::Wildcard; }
  bool is_compound() const noexcept { return kind_ == Kind::Compound; }
  // Symbols and compounds can stand as atoms.
  bool is_callable() const noexcept { return is_symbol() || is_compound(); }

  // Symbol text, functor, or variable/wildcard identifier.
  const std::string& name() const noexcept { return name_; }
  std::int64_t value() const noexcept { return value_; }
  const std::vector<Term>& args() const noexcept { return args_; }
  std::size_t arity() const noexcept { return args_.size(); }

  bool is_ground() const;

  // Appends every Variable identifier in left-to-right order (with repeats).
  void collect_variables(std::vector<std::string>& out) const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
  Kind kind_ = Kind::Symbol;
  std::int64_t value_ = 0;
  std::string name_;
  std::vector<Term> args_;
};

// Predicate key: functor plus arity.
struct Signature {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

inline Signature signature_of(const Term& t) { return {t.name(), t.arity()}; }

std::string render(const Term& t);

// Variable identifier to ground term.
class Binding {
public:
  using Map = std::map<std::string, Term>;

  const Term* find(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  // Throws Error(InvalidArgument) if value is not ground.
  void bind(const std::string& var, Term value);
  void erase(const std::string& var) { map_.erase(var); }

  bool empty() const noexcept { return map_.empty(); }
  std::size_t size() const noexcept { return map_.size(); }
  const Map& entries() const noexcept { return map_; }

  // Replaces every bound variable; unbound variables and wildcards stay.
  Term apply(const Term& t) const;

  friend bool operator==(const Binding&, const Binding&) = default;

private:
  Map map_;
};

// `{A=1,B=q}`, entries in identifier order.
std::string render(const Binding& b);

// One-way matching of a pattern against a ground term, extending `b`.
// On failure `b` may hold partial extensions; callers copy first.
bool match(const Term& pattern, const Term& ground, Binding& b);

}  // namespace ailtl
