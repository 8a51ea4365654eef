#include "ailtl/dsl.hpp"
#include "ailtl/error.hpp"
#include "ailtl/metagate.hpp"
#include "support/gate_oracle.hpp"

#include <gtest/gtest.h>

using namespace ailtl;

namespace {

Term T(const char* s) { return parse_term(s); }

Name N(const char* s) { return reify(parse_term(s)); }

const char* kEthicsMeta = R"(
meta:
  solve(execute_action(Act)) :- context_N(C,R), allowed(C,R,Act), ethical(C,R,Act).
  solve_not(execute_action(Act)) :- context_N(C,_r), ethical_exception(C,Act).
)";

FactBase ethics_kb(const char* context) {
  FactBase kb;
  for (const char* f : {"allowed(video_game,player,shoot)", "ethical(video_game,player,shoot)",
                        "allowed(reality,citizen,shout)", "ethical(reality,citizen,shout)"})
    kb.assert_fact(T(f));
  kb.assert_fact(T(context));
  return kb;
}

}  // namespace

TEST(Reify, NamesRenderWithQuotes) {
  EXPECT_EQ(render(N("execute_action(shoot)")), "execute_action'(shoot')");
  EXPECT_EQ(render(N("p(a,3,q(b))")), "p'(a',3',q'(b'))");
}

TEST(Reify, RoundTrip) {
  for (const char* s : {"p(a,b,c)", "x", "42", "f(g(h(1)),k)"}) EXPECT_EQ(unreify(N(s)), T(s));
}

TEST(Reify, RejectsNonGround) {
  try {
    reify(T("p(X)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonGroundReify);
  }
  EXPECT_THROW(reify(T("p(_)")), Error);
}

TEST(Reify, BijectiveOnGeneratedTerms) {
  std::mt19937 rng(8);
  std::function<Term(int)> gen = [&](int depth) -> Term {
    switch (depth > 2 ? rng() % 2 : rng() % 3) {
      case 0: return Term::symbol(std::string(1, static_cast<char>('a' + rng() % 3)));
      case 1: return Term::integer(static_cast<std::int64_t>(rng() % 5) - 2);
      default: {
        std::vector<Term> args;
        for (unsigned i = 0; i < 1 + rng() % 3; ++i) args.push_back(gen(depth + 1));
        return Term::compound(std::string(1, static_cast<char>('f' + rng() % 2)), args);
      }
    }
  };
  std::vector<Term> terms;
  for (int i = 0; i < 300; ++i) terms.push_back(gen(0));
  for (const auto& a : terms) {
    EXPECT_EQ(unreify(reify(a)), a);
    for (const auto& b : terms) {
      EXPECT_EQ(reify(a) == reify(b), a == b);
    }
  }
}

TEST(MatchName, BindsObjectLevelTerms) {
  Binding b;
  EXPECT_TRUE(match_name(T("execute_action(Act)"), N("execute_action(shoot)"), b));
  EXPECT_EQ(render(b), "{Act=shoot}");
  Binding c;
  EXPECT_FALSE(match_name(T("execute_action(call)"), N("execute_action(shoot)"), c));
  Binding d;
  EXPECT_TRUE(match_name(T("move(X,X)"), N("move(a,a)"), d));
  Binding e;
  EXPECT_FALSE(match_name(T("move(X,X)"), N("move(a,b)"), e));
}

TEST(Gate, EthicsVignette) {
  const auto meta = parse_program(kEthicsMeta).meta;
  EXPECT_EQ(gate(T("execute_action(shoot)"), meta, ethics_kb("context_N(video_game,player)")).decision,
            GateDecision::Confirmed);
  EXPECT_EQ(gate(T("execute_action(shoot)"), meta, ethics_kb("context_N(reality,citizen)")).decision,
            GateDecision::BlockedBySolveFail);

  FactBase kids = ethics_kb("context_N(video_game,player)");
  kids.assert_fact(T("ethical_exception(video_game,shoot)"));
  auto out = gate(T("execute_action(shoot)"), meta, kids);
  EXPECT_EQ(out.decision, GateDecision::BlockedBySolveNot);
  EXPECT_TRUE(out.solve_succeeds);
  EXPECT_TRUE(out.solve_not_succeeds);

  EXPECT_EQ(gate(T("push(3,q1)"), meta, kids).decision, GateDecision::NoRulesApply);
}

TEST(Gate, SolveFailIsReportedFirst) {
  const auto meta = parse_program("meta:\n  solve(go(X)) :- ok(X).\n  solve_not(go(X)) :- bad(X).\n").meta;
  FactBase kb;
  kb.assert_fact(T("bad(a)"));
  auto out = gate(T("go(a)"), meta, kb);
  EXPECT_EQ(out.decision, GateDecision::BlockedBySolveFail);
  EXPECT_TRUE(out.solve_applies);
  EXPECT_FALSE(out.solve_succeeds);
  EXPECT_TRUE(out.solve_not_succeeds);
}

TEST(Gate, AnySucceedingSolveRuleSuffices) {
  const auto meta = parse_program("meta:\n  solve(go(X)) :- ok(X).\n  solve(go(X)) :- fine(X).\n").meta;
  FactBase kb;
  kb.assert_fact(T("fine(a)"));
  EXPECT_EQ(gate(T("go(a)"), meta, kb).decision, GateDecision::Confirmed);
  EXPECT_EQ(gate(T("go(b)"), meta, kb).decision, GateDecision::BlockedBySolveFail);
}

TEST(Gate, FactHeadsAndRender) {
  const auto meta = parse_program("meta:\n  solve_not(push(R,Q)) :- in_queue(_e,R).\n  solve(ping).\n").meta;
  ASSERT_EQ(meta.size(), 2u);
  EXPECT_EQ(render(meta[0]), "solve_not(push(R,Q)) :- in_queue(_e,R).");
  EXPECT_EQ(render(meta[1]), "solve(ping).");
  FactBase kb;
  EXPECT_EQ(gate(T("ping"), meta, kb).decision, GateDecision::Confirmed);
  kb.assert_fact(T("in_queue(e1,5)"));
  EXPECT_EQ(gate(T("push(5,q1)"), meta, kb).decision, GateDecision::BlockedBySolveNot);
  EXPECT_EQ(gate(T("push(6,q1)"), meta, kb).decision, GateDecision::Confirmed);
}

TEST(Acceptable, Schemata) {
  EXPECT_TRUE(acceptable({Atom{MetaAtom{Polarity::Solve, N("p")}}, Atom{T("p")}}));
  EXPECT_FALSE(acceptable({Atom{MetaAtom{Polarity::SolveNot, N("p")}}, Atom{T("p")}}));
  EXPECT_FALSE(acceptable({Atom{MetaAtom{Polarity::Solve, N("p")}}}));
  EXPECT_TRUE(acceptable({Atom{MetaAtom{Polarity::SolveNot, N("p")}}}));
  EXPECT_TRUE(acceptable({}));
}

TEST(Acceptable, BaseVersion) {
  AtomSet with_meta{Atom{MetaAtom{Polarity::Solve, N("p")}}, Atom{T("p")}, Atom{T("q")}};
  EXPECT_EQ(base_version(with_meta), (AtomSet{Atom{T("p")}, Atom{T("q")}}));
  AtomSet plain{Atom{T("p")}};
  EXPECT_EQ(base_version(plain), plain);
  EXPECT_TRUE(base_version({Atom{MetaAtom{Polarity::SolveNot, N("p")}}}).empty());
}

// Random programs: decisions agree with a brute-force reading of the rules,
// solve_not dominates a succeeding solve, and the resulting interpretation is
// acceptable.
TEST(Gate, RandomProgramsAgreeWithOracle) {
  std::mt19937 rng(2026);
  for (int round = 0; round < 1000; ++round) {
    auto prog = oracle::random_gate_program(rng);
    FactBase kb;
    for (const auto& f : prog.facts) kb.assert_fact(f);
    std::vector<GateDecision> decisions;
    for (const auto& g : prog.goals) {
      auto out = gate(g, prog.rules, kb);
      auto v = oracle::evaluate_rules(prog, g);
      ASSERT_EQ(out.decision, oracle::expected_decision(v)) << render(g);
      EXPECT_EQ(out.solve_applies, v.solve_applies);
      EXPECT_EQ(out.solve_succeeds, v.solve_succeeds);
      EXPECT_EQ(out.solve_not_applies, v.not_applies);
      EXPECT_EQ(out.solve_not_succeeds, v.not_succeeds);
      if (v.solve_succeeds && v.not_succeeds) EXPECT_EQ(out.decision, GateDecision::BlockedBySolveNot);
      decisions.push_back(out.decision);
    }
    EXPECT_TRUE(acceptable(oracle::interpretation(prog, decisions)));
  }
}
