#include "ailtl/term.hpp"

#include "ailtl/error.hpp"

#include <sstream>

namespace ailtl {

Term Term::symbol(std::string name) {
  Term t;
  t.kind_ = Kind::Symbol;
  t.name_ = std::move(name);
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::Integer;
  t.value_ = value;
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.name_ = std::move(name);
  return t;
}

Term Term::wildcard(std::string name) {
  Term t;
  t.kind_ = Kind::Wildcard;
  t.name_ = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return symbol(std::move(functor));
  Term t;
  t.kind_ = Kind::Compound;
  t.name_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::Variable:
    case Kind::Wildcard:
      return false;
    case Kind::Compound:
      for (const auto& a : args_)
        if (!a.is_ground()) return false;
      return true;
    default:
      return true;
  }
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (kind_ == Kind::Variable) {
    out.push_back(name_);
  } else if (kind_ == Kind::Compound) {
    for (const auto& a : args_) a.collect_variables(out);
  }
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  switch (a.kind_) {
    case Term::Kind::Integer:
      return a.value_ <=> b.value_;
    case Term::Kind::Compound: {
      if (auto c = a.name_.compare(b.name_) <=> 0; c != 0) return c;
      if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
      for (std::size_t i = 0; i < a.args_.size(); ++i)
        if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
      return std::strong_ordering::equal;
    }
    default:
      return a.name_.compare(b.name_) <=> 0;
  }
}

namespace {

void render_into(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Integer:
      os << t.value();
      return;
    case Term::Kind::Compound:
      os << t.name() << '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) os << ',';
        render_into(os, t.args()[i]);
      }
      os << ')';
      return;
    default:
      os << t.name();
  }
}

}  // namespace

std::string render(const Term& t) {
  std::ostringstream os;
  render_into(os, t);
  return os.str();
}

const Term* Binding::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Binding::bind(const std::string& var, Term value) {
  if (!value.is_ground())
    throw Error(ErrorCode::InvalidArgument, "binding " + var + " to non-ground " + render(value));
  map_.insert_or_assign(var, std::move(value));
}

Term Binding::apply(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (const Term* v = find(t.name())) return *v;
      return t;
    case Term::Kind::Compound: {
      if (map_.empty() || t.is_ground()) return t;
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back(apply(a));
      return Term::compound(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

std::string render(const Binding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : b.entries()) {
    if (!first) out += ',';
    first = false;
    out += k;
    out += '=';
    out += render(v);
  }
  out += '}';
  return out;
}

bool match(const Term& pattern, const Term& ground, Binding& b) {
  switch (pattern.kind()) {
    case Term::Kind::Wildcard:
      return true;
    case Term::Kind::Variable:
      if (const Term* v = b.find(pattern.name())) return *v == ground;
      b.bind(pattern.name(), ground);
      return true;
    case Term::Kind::Integer:
      return ground.is_integer() && ground.value() == pattern.value();
    case Term::Kind::Symbol:
      return ground.is_symbol() && ground.name() == pattern.name();
    case Term::Kind::Compound:
      if (!ground.is_compound() || ground.name() != pattern.name() ||
          ground.arity() != pattern.arity())
        return false;
      for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match(pattern.args()[i], ground.args()[i], b)) return false;
      return true;
  }
  return false;
}

}  // namespace ailtl
