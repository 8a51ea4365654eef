#include "ailtl/dsl.hpp"

#include "ailtl/error.hpp"

#include <array>
#include <cctype>
#include <set>

namespace ailtl {

namespace {

enum class Tok : std::uint8_t { Ident, Var, Wildcard, Int, Keyword, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

constexpr std::array<std::string_view, 5> kKeywords = {"ALWAYS", "EVENTUALLY", "NEVER", "DIV", "IN"};

// Longest first so that `::::` wins over `:::` and so on.
constexpr std::array<std::string_view, 24> kSymbols = {
    "::::", ":::", "|||", "::", ":-", ":<", "||", "<=", ">=", "\\=", "(", ")",
    ",",    ".",   ";",   "{",  "}",  "+",  "*",  "|",  ":",  "<",   ">",  "=",
};

struct Utf8Op {
  std::string_view bytes;
  std::string_view ascii;
};
constexpr std::array<Utf8Op, 3> kUtf8Ops = {{
    {"\xE2\x89\xA4", "<="},
    {"\xE2\x89\xA5", ">="},
    {"\xE2\x89\xA0", "\\="},
}};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(start, j - start));
      try {
        t.value = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError(t.line, t.column, "integer out of range");
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.text = std::string(src.substr(start, j - start));
      if (c == '_') {
        t.kind = Tok::Wildcard;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        t.kind = Tok::Var;
        for (auto kw : kKeywords)
          if (t.text == kw) t.kind = Tok::Keyword;
      } else {
        t.kind = Tok::Ident;
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const auto& u : kUtf8Ops) {
      if (src.substr(i, u.bytes.size()) == u.bytes) {
        t.kind = Tok::Sym;
        t.text = std::string(u.ascii);
        advance(u.bytes.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (auto s : kSymbols) {
        if (src.substr(i, s.size()) == s) {
          t.kind = Tok::Sym;
          t.text = std::string(s);
          advance(s.size());
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      std::string shown(1, c);
      throw ParseError(line, col, "unexpected character '" + shown + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_compare_sym(const Token& t) {
  if (t.kind != Tok::Sym) return false;
  for (auto op : kCompareOps)
    if (t.text == op) return true;
  return t.text == "=";
}

constexpr std::array<std::string_view, 6> kSections = {"facts", "meta", "rules", "expr", "costs", "config"};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    if (at_end()) fail(peek(), "expected a section such as 'facts:'");
    while (!at_end()) {
      if (!at_section()) fail(peek(), "expected a section header");
      std::string name = next().text;
      next();  // ':'
      while (!at_end() && !at_section()) {
        if (name == "facts") p.facts.push_back(fact());
        else if (name == "meta") p.meta.push_back(metarule());
        else if (name == "rules") p.rules.push_back(reactive());
        else if (name == "expr") p.exprs.push_back(evolutionary());
        else if (name == "costs") p.costs.push_back(costrow(p.costs));
        else config_entry(p.config);
      }
    }
    check_windows(p.config.ticks_per_minute.value_or(1));
    return p;
  }

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  PatternSeq whole_patterns() {
    PatternSeq p = patseq();
    expect_end();
    return p;
  }

  Conjunction whole_conjunction() {
    Conjunction c = conj();
    expect_end();
    check_windows(1);
    return c;
  }

  void expect_end() {
    if (!at_end()) fail(peek(), "expected end of input");
  }

private:
  struct Window {
    TimeLit lower;
    TimeLit upper;
    Token at;
  };

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column, what + ", found " + describe(t));
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool at_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool at_keyword(std::string_view s) const { return peek().kind == Tok::Keyword && peek().text == s; }
  bool accept(std::string_view s) {
    if (!at_sym(s)) return false;
    next();
    return true;
  }
  const Token& expect(std::string_view s) {
    if (!at_sym(s)) fail(peek(), "expected '" + std::string(s) + "'");
    return next();
  }
  bool at_section() const {
    if (peek().kind != Tok::Ident || !at_sym(":", 1)) return false;
    for (auto s : kSections)
      if (peek().text == s) return true;
    return false;
  }
  bool at_op() const { return at_keyword("ALWAYS") || at_keyword("EVENTUALLY") || at_keyword("NEVER"); }

  void check_windows(std::int64_t tpm) const {
    for (const auto& w : windows_)
      if (w.lower.ticks(tpm) > w.upper.ticks(tpm))
        throw ParseError(w.at.line, w.at.column, "interval lower bound exceeds upper bound");
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        next();
        return Term::integer(t.value);
      case Tok::Var:
        next();
        return Term::variable(t.text);
      case Tok::Wildcard:
        next();
        return Term::wildcard(t.text);
      case Tok::Ident: {
        std::string name = next().text;
        if (!accept("(")) return Term::symbol(std::move(name));
        return Term::compound(std::move(name), arguments());
      }
      default:
        fail(t, "expected a term");
    }
  }

  // After the opening parenthesis.
  std::vector<Term> arguments() {
    std::vector<Term> args;
    args.push_back(term());
    while (accept(",")) args.push_back(term());
    expect(")");
    return args;
  }

  Term atom() {
    const Token& at = peek();
    Term t = term();
    if (!t.is_callable()) fail(at, "expected an atom");
    return t;
  }

  Term ground_atom() {
    const Token& at = peek();
    Term t = atom();
    if (!t.is_ground()) fail(at, "expected a ground atom");
    return t;
  }

  Literal literal() {
    Literal lit;
    if (peek().kind == Tok::Ident && peek().text == "not") {
      Tok after = peek(1).kind;
      if (after == Tok::Ident || after == Tok::Var || after == Tok::Wildcard || after == Tok::Int) {
        next();
        lit.negated = true;
      }
    }
    const Token& at = peek();
    Term lhs = term();
    if (is_compare_sym(peek())) {
      std::string op = next().text;
      Term rhs = term();
      lit.atom = Term::compound(std::move(op), {std::move(lhs), std::move(rhs)});
      return lit;
    }
    if (!lhs.is_callable()) fail(at, "expected an atom or comparison");
    if (is_comparison(lhs)) fail(at, "comparisons are written infix");
    lit.atom = std::move(lhs);
    return lit;
  }

  Conjunction conj() {
    Conjunction c;
    c.push_back(literal());
    while (accept(",")) c.push_back(literal());
    return c;
  }

  PatternElem pattern() {
    const Token& at = peek();
    if (at.kind != Tok::Ident) fail(at, "expected an event pattern");
    std::string name = next().text;
    auto quantifier = [&]() {
      if (accept("+")) return Quantifier::Plus;
      if (accept("*")) return Quantifier::Star;
      return Quantifier::One;
    };
    Quantifier q = quantifier();
    Term written = Term::symbol(name);
    if (accept("(")) written = Term::compound(name, arguments());
    if (q == Quantifier::One) q = quantifier();
    return PatternElem(std::move(written), q);
  }

  PatternSeq patseq() {
    PatternSeq p;
    p.push_back(pattern());
    while (accept(",")) p.push_back(pattern());
    return p;
  }

  TimeLit time() {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail(t, "expected a time");
    next();
    if (!at_sym(":") || peek(1).kind != Tok::Int) {
      if (t.value < 0) fail(t, "expected a non-negative time");
      return TimeLit{t.value, false};
    }
    next();
    const Token& mm = next();
    if (t.value < 0) fail(t, "expected a non-negative hour");
    if (mm.value < 0 || mm.value >= 60 || mm.text.size() != 2) fail(mm, "expected minutes 00-59");
    return TimeLit{t.value * 60 + mm.value, true};
  }

  IntervalOp op() {
    IntervalOp out;
    const Token& t = peek();
    if (!at_op()) fail(t, "expected ALWAYS, EVENTUALLY or NEVER");
    next();
    out.op = t.text == "ALWAYS" ? TemporalOp::Always : t.text == "EVENTUALLY" ? TemporalOp::Eventually : TemporalOp::Never;
    if (!accept("(")) return out;
    out.lower = time();
    if (accept(",")) {
      Token upper_at = peek();
      out.upper = time();
      windows_.push_back(Window{*out.lower, *out.upper, upper_at});
    }
    if (accept(";")) {
      Token k_at = peek();
      out.frequency = time();
      if (out.frequency->amount < 1) fail(k_at, "expected a frequency of at least 1");
    }
    expect(")");
    return out;
  }

  ContextualFormula formula() {
    ContextualFormula f;
    f.op = op();
    f.phi = conj();
    if (accept("::")) f.context = conj();
    return f;
  }

  ReactionElem reaction_elem() {
    if (peek().kind == Tok::Var && peek(1).kind == Tok::Keyword && peek(1).text == "IN") {
      ChoiceElem c;
      c.variable = next().text;
      next();
      expect("{");
      c.options.push_back(ground_atom());
      while (accept(",")) c.options.push_back(ground_atom());
      expect(":");
      if (peek().kind != Tok::Ident) fail(peek(), "expected a preference name");
      c.preference = next().text;
      expect("}");
      return c;
    }
    ActionElem a;
    a.atom = atom();
    if (accept(":<")) {
      if (accept("(")) {
        a.precondition = conj();
        expect(")");
      } else {
        a.precondition.push_back(literal());
      }
    }
    return a;
  }

  Reaction reaction() {
    Reaction r;
    r.push_back(reaction_elem());
    while (accept(",")) r.push_back(reaction_elem());
    return r;
  }

  Term fact() {
    const Token& at = peek();
    Term t = atom();
    if (!t.is_ground()) fail(at, "facts must be ground");
    if (is_comparison(t)) fail(at, "reserved functor in fact");
    expect(".");
    return t;
  }

  MetaRule metarule() {
    const Token& t = peek();
    MetaRule r;
    if (t.kind == Tok::Ident && t.text == "solve") r.polarity = Polarity::Solve;
    else if (t.kind == Tok::Ident && t.text == "solve_not") r.polarity = Polarity::SolveNot;
    else fail(t, "expected solve or solve_not");
    next();
    expect("(");
    r.head = atom();
    expect(")");
    if (accept(":-")) r.body = conj();
    expect(".");
    return r;
  }

  ReactiveRule reactive() {
    ReactiveRule r;
    r.monitor = formula();
    if (!at_keyword("DIV")) fail(peek(), "expected DIV");
    next();
    r.reaction = reaction();
    expect(".");
    return r;
  }

  EvolutionaryExpr evolutionary() {
    EvolutionaryExpr x;
    if (!at_op()) {
      x.pre = patseq();
      expect(":");
    }
    x.tau = formula();
    if (accept(":::")) x.future = patseq();
    if (accept("::::")) x.breaking = patseq();
    if (at_keyword("DIV")) {
      next();
      x.repair = reaction();
    }
    if (accept("|")) x.eta1 = atom();
    if (accept("||")) x.eta2 = atom();
    if (accept("|||")) x.eta3 = reaction();
    expect(".");
    return x;
  }

  CostRow costrow(const std::vector<CostRow>& seen) {
    const Token& at = peek();
    if (at.kind != Tok::Ident) fail(at, "expected a preference name");
    CostRow row;
    row.preference = next().text;
    expect("(");
    const Token& cand = peek();
    row.candidate = term();
    if (!row.candidate.is_ground()) fail(cand, "expected a ground candidate");
    expect(")");
    expect("=");
    const Token& c = peek();
    if (c.kind != Tok::Int) fail(c, "expected an integer cost");
    row.cost = next().value;
    expect(".");
    for (const auto& r : seen)
      if (r.preference == row.preference && r.candidate == row.candidate) fail(at, "duplicate cost entry");
    return row;
  }

  void config_entry(ProgramConfig& cfg) {
    const Token& key = peek();
    if (key.kind != Tok::Ident) fail(key, "expected a config key");
    next();
    expect("=");
    const Token& val = peek();
    auto integer = [&](std::optional<std::int64_t>& slot, std::int64_t min) {
      if (slot) fail(key, "duplicate config key");
      if (val.kind != Tok::Int || val.value < min)
        fail(val, "expected an integer of at least " + std::to_string(min));
      slot = val.value;
    };
    if (key.text == "default_frequency") integer(cfg.default_frequency, 1);
    else if (key.text == "ticks_per_minute") integer(cfg.ticks_per_minute, 1);
    else if (key.text == "end") integer(cfg.end, 0);
    else if (key.text == "emission_cap") integer(cfg.emission_cap, 1);
    else if (key.text == "tick_scale") {
      if (cfg.tick_scale) fail(key, "duplicate config key");
      if (val.kind != Tok::Ident) fail(val, "expected a name");
      cfg.tick_scale = val.text;
    } else {
      fail(key, "unknown config key");
    }
    next();
    expect(".");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Window> windows_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(lex(text)).program(); }

Term parse_term(std::string_view text) { return Parser(lex(text)).whole_term(); }

PatternSeq parse_patterns(std::string_view text) { return Parser(lex(text)).whole_patterns(); }

Conjunction parse_conjunction(std::string_view text) { return Parser(lex(text)).whole_conjunction(); }

std::string render(const ContextualFormula& f) {
  std::string out = render(f.op) + " " + render(f.phi);
  if (!f.context.empty()) out += " :: " + render(f.context);
  return out;
}

std::string render(const ReactiveRule& r) { return render(r.monitor) + " DIV " + render(r.reaction) + "."; }

std::string render(const EvolutionaryExpr& x) {
  std::string out;
  if (!x.pre.empty()) out += render(x.pre) + " : ";
  out += render(x.tau);
  if (!x.future.empty()) out += " ::: " + render(x.future);
  if (!x.breaking.empty()) out += " :::: " + render(x.breaking);
  if (x.repair) out += " DIV " + render(*x.repair);
  if (x.eta1) out += " | " + render(*x.eta1);
  if (x.eta2) out += " || " + render(*x.eta2);
  if (x.eta3) out += " ||| " + render(*x.eta3);
  return out + ".";
}

std::string render(const Program& p) {
  std::string out;
  auto section = [&](const char* name) {
    if (!out.empty()) out += '\n';
    out += name;
    out += ":\n";
  };
  if (!p.facts.empty()) {
    section("facts");
    for (const auto& f : p.facts) out += "  " + render(f) + ".\n";
  }
  if (!p.meta.empty()) {
    section("meta");
    for (const auto& r : p.meta) out += "  " + render(r) + "\n";
  }
  if (!p.rules.empty()) {
    section("rules");
    for (const auto& r : p.rules) out += "  " + render(r) + "\n";
  }
  if (!p.exprs.empty()) {
    section("expr");
    for (const auto& x : p.exprs) out += "  " + render(x) + "\n";
  }
  if (!p.costs.empty()) {
    section("costs");
    for (const auto& c : p.costs)
      out += "  " + c.preference + "(" + render(c.candidate) + ") = " + std::to_string(c.cost) + ".\n";
  }
  const auto& cfg = p.config;
  if (cfg != ProgramConfig{}) {
    section("config");
    auto kv = [&](const char* key, const std::optional<std::int64_t>& v) {
      if (v) out += std::string("  ") + key + " = " + std::to_string(*v) + ".\n";
    };
    kv("default_frequency", cfg.default_frequency);
    kv("ticks_per_minute", cfg.ticks_per_minute);
    kv("end", cfg.end);
    kv("emission_cap", cfg.emission_cap);
    if (cfg.tick_scale) out += "  tick_scale = " + *cfg.tick_scale + ".\n";
  }
  // An empty program still needs one section to parse.
  if (out.empty()) out = "facts:\n";
  return out;
}

std::vector<Event> parse_trace(std::string_view text) {
  std::vector<Token> toks = lex(text);
  std::vector<Event> out;
  std::size_t i = 0;
  while (toks[i].kind != Tok::End) {
    const std::size_t line = toks[i].line;
    std::size_t j = i;
    while (toks[j].kind != Tok::End && toks[j].line == line) ++j;

    const Token& ts = toks[i];
    if (ts.kind != Tok::Int || ts.value < 0)
      throw ParseError(ts.line, ts.column, "expected a non-negative timestamp, found " + describe(ts));
    if (i + 1 >= j) throw ParseError(ts.line, ts.column + ts.text.size(), "expected an event kind letter");
    const Token& kind = toks[i + 1];
    std::optional<EventKind> k;
    if (kind.text.size() == 1) k = kind_from_letter(kind.text[0]);
    if (!k) throw ParseError(kind.line, kind.column, "unknown event kind " + describe(kind));
    if (i + 2 >= j) throw ParseError(kind.line, kind.column + 1, "expected an event term");

    std::vector<Token> line_toks(toks.begin() + static_cast<std::ptrdiff_t>(i + 2),
                                 toks.begin() + static_cast<std::ptrdiff_t>(j));
    Token end;
    end.line = line;
    end.column = line_toks.back().column + line_toks.back().text.size();
    line_toks.push_back(end);
    const Token first = line_toks.front();
    Term payload = Parser(std::move(line_toks)).whole_term();
    if (!payload.is_callable() || !payload.is_ground())
      throw ParseError(first.line, first.column, "expected a ground atom, found " + describe(first));

    if (!out.empty() && ts.value < out.back().timestamp)
      throw Error(ErrorCode::TimestampRegression,
                  "line " + std::to_string(line) + ": " + std::to_string(ts.value) + " after " +
                      std::to_string(out.back().timestamp));
    out.push_back(Event{*k, std::move(payload), ts.value});
    i = j;
  }
  return out;
}

std::string render_trace(const std::vector<Event>& events) {
  std::string out;
  for (const auto& e : events) out += render(e) + "\n";
  return out;
}

}  // namespace ailtl
