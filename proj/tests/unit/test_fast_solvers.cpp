#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "autgroup/builtin.hpp"
#include "autgroup/fast_solvers.hpp"
#include "oracles.hpp"

namespace autgroup {
namespace {

const AutomatonGroup& group(const std::string& name) {
  static std::map<std::string, std::unique_ptr<AutomatonGroup>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<AutomatonGroup>(builtin_automaton(name));
  return *slot;
}

const ContractionCertificate& grigorchuk_item1() {
  static const auto c = build_certificate(group("grigorchuk"), 2, 1, ContractionMode::item1);
  return c;
}

const ContractionCertificate& grigorchuk_item3() {
  static const auto c = build_certificate(group("grigorchuk"), 10, 3, ContractionMode::item3);
  return c;
}

const ContractionCertificate& basilica_item1() {
  static const auto c = build_certificate(group("basilica"), 3, 2, ContractionMode::item1);
  return c;
}

TEST(TapeWord, NormalizeAndSegments) {
  TapeWord t({kSeparator, 1, kSeparator, kSeparator, 2, 3, kSeparator});
  t.normalize();
  EXPECT_EQ(t.symbols(), (std::vector<State>{1, kSeparator, 2, 3}));
  EXPECT_EQ(t.segments(), (std::vector<Word>{{1}, {2, 3}}));
  EXPECT_TRUE(TapeWord{}.segments().empty());
}

TEST(MxStep, ShortWordIsDirectSection) {
  const auto& g = group("grigorchuk");
  const Word w = g.parse_word("abcd");
  const auto power = alphabet_power(g.automaton(), 3);
  for (Letter x = 0; x < 8; ++x) {
    EXPECT_EQ(mx_step(g, grigorchuk_item3(), x, w), section_of_word(power, w, LetterWord{x}));
  }
}

TEST(MxStep, TwoBlocks) {
  const auto& g = group("grigorchuk");
  const auto& c = grigorchuk_item3();
  const auto power = alphabet_power(g.automaton(), 3);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const Word w = testing::random_word(rng, g.generators(), 20);
    std::size_t total = 0;
    for (Letter x = 0; x < 8; ++x) {
      const Word out = mx_step(g, c, x, w);
      const Word first(c.entry(std::span(w).first(10), x).begin(), c.entry(std::span(w).first(10), x).end());
      const Letter x2 = perm_of_word(power, std::span(w).first(10))(x);
      Word expected(first);
      const auto second = c.entry(std::span(w).subspan(10), x2);
      expected.insert(expected.end(), second.begin(), second.end());
      EXPECT_EQ(out, expected);
      EXPECT_TRUE(are_equal(g, out, section_of_word(power, w, LetterWord{x})));
      total += out.size();
    }
    EXPECT_LE(total, 18u);
  }
}

TEST(MxStep, EmptyEntry) {
  const auto& g = group("grigorchuk");
  const auto& c = grigorchuk_item1();
  Word w;
  bool found = false;
  for (std::uint64_t i = 0; i < c.indexer().count() && !found; ++i) {
    c.indexer().decode(i, w);
    if (c.entry(i, 0).empty()) found = true;
  }
  ASSERT_TRUE(found);
  EXPECT_TRUE(mx_step(g, c, 0, w).empty());
}

TEST(SolveContracting, Examples) {
  const auto& g = group("grigorchuk");
  const auto aa = solve_contracting(g, grigorchuk_item1(), g.parse_word("aa"));
  EXPECT_TRUE(aa.accepted);
  EXPECT_EQ(aa.stages, 1u);
  const auto a = solve_contracting(g, grigorchuk_item1(), g.parse_word("a"));
  EXPECT_FALSE(a.accepted);
  const auto empty = solve_contracting(g, grigorchuk_item1(), Word{});
  EXPECT_TRUE(empty.accepted);
  EXPECT_EQ(empty.stages, 0u);
  EXPECT_EQ(empty.steps, 0u);
  const auto ab = solve_contracting(g, grigorchuk_item3(), g.parse_word("(ab)^8"));
  EXPECT_FALSE(ab.accepted);
  EXPECT_TRUE(solve_contracting(g, grigorchuk_item3(), g.parse_word("(ab)^16")).accepted);
}

TEST(SolveContracting, TableNotReadForShortSegments) {
  const auto& g = group("grigorchuk");
  const auto c = build_certificate(g, 4, 1, ContractionMode::item1);
  StageMachine machine = contracting_machine(g, c);
  testing::for_each_word(g.generators(), 3, [&](const Word& w) { machine.run(w); });
  EXPECT_EQ(machine.table_reads(), 0u);
  machine.run(g.parse_word("abab"));
  EXPECT_GT(machine.table_reads(), 0u);
}

TEST(SolveContracting, StageSegmentBoundItem1) {
  const auto& b = group("basilica");
  const auto& c = basilica_item1();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    Word w = testing::random_word(rng, b.generators(), 50 + rng() % 200);
    const Word inv = b.inverse_word(w);
    w.insert(w.end(), inv.begin(), inv.end());
    const auto report = solve_contracting(b, c, w);
    EXPECT_TRUE(report.accepted);
    for (std::size_t k = 0; k < report.stages; ++k) {
      EXPECT_LE(static_cast<double>(report.max_segment[k]),
                std::pow(c.lambda(), static_cast<double>(k)) * static_cast<double>(w.size()) + 1e-9)
          << "stage " << k;
    }
    EXPECT_GE(report.steps, w.size());
  }
}

TEST(SolveContracting, Item2GuardOrCorrect) {
  const auto& b = group("basilica");
  const auto c = build_certificate(b, 1, 1, ContractionMode::item2);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const Word w = testing::random_word(rng, b.generators(), 1 + rng() % 16);
    try {
      EXPECT_EQ(solve_contracting(b, c, w).accepted, is_identity_oracle(b.automaton(), w));
    } catch (const NonTermination&) {
    }
  }
  SolverOptions tight;
  tight.stage_limit = 1;
  EXPECT_THROW(solve_contracting(b, c, b.parse_word("(a b A B)^8"), tight), NonTermination);
}

TEST(SolveBounded, Basilica) {
  const auto& b = group("basilica");
  for (const char* text : {"(ab)^16", "b b^-1", "(a b A B)^4", "a b a^-1 b^-1 b a b^-1 a^-1"}) {
    const Word w = b.parse_word(text);
    EXPECT_EQ(solve_bounded(b, basilica_item1(), w).accepted, is_identity_oracle(b.automaton(), w))
        << text;
  }
  EXPECT_TRUE(solve_bounded(b, basilica_item1(), b.parse_word("b b^-1")).accepted);
}

TEST(SolveBounded, AgreesWithContractingOnGrigorchuk) {
  const auto& g = group("grigorchuk");
  StageMachine contracting = contracting_machine(g, grigorchuk_item1());
  StageMachine bounded = bounded_machine(g, grigorchuk_item1());
  for (std::size_t length = 0; length <= 6; ++length) {
    testing::for_each_word(g.generators(), length, [&](const Word& w) {
      const bool expected = is_identity_oracle(g.automaton(), w);
      ASSERT_EQ(contracting.run(w).accepted, expected) << g.format_word(w, "");
      ASSERT_EQ(bounded.run(w).accepted, expected) << g.format_word(w, "");
    });
  }
}

TEST(SolvePolynomial, Examples) {
  const auto& p = group("poly1");
  EXPECT_TRUE(solve_polynomial(p, 1, p.parse_word("a a^-1")).accepted);
  const Word w = p.parse_word("(b a b a^-1)^8");
  EXPECT_EQ(solve_polynomial(p, 1, w).accepted, is_identity_oracle(p.automaton(), w));
  // b b^-1 is fixed by the section at 1, so the reset rule empties that copy.
  const auto report = solve_polynomial(p, 1, p.parse_word("b b^-1"));
  EXPECT_TRUE(report.accepted);
  SolverOptions tight;
  tight.stage_limit = 1;
  EXPECT_THROW(solve_polynomial(p, 1, p.parse_word("(b a b a^-1 b a^-1)^16"), nullptr, tight),
               StageGuardExceeded);
}

TEST(SolvePolynomial, ResetRuleOnFixedWord) {
  // s is fixed by every section and acts trivially on the first level, so
  // without the reset rule the copy of "s" at every x would never shrink.
  const AutomatonGroup g(parse_automaton(
      "alphabet: 0 1\nstates: e s t\ntrans: e 0 -> e 0\ntrans: e 1 -> e 1\n"
      "trans: s 0 -> s 0\ntrans: s 1 -> t 1\ntrans: t 0 -> e 1\ntrans: t 1 -> e 0\n"));
  const Word w = g.parse_word("s s^-1");
  const auto report = solve_polynomial(g, 1, w);
  EXPECT_TRUE(report.accepted);
  EXPECT_EQ(report.accepted, is_identity_oracle(g.automaton(), w));
  EXPECT_FALSE(solve_polynomial(g, 1, g.parse_word("s")).accepted);
}

class Agreement : public ::testing::TestWithParam<std::string> {};

TEST_P(Agreement, RandomWordsMatchOracle) {
  const auto& g = group(GetParam());
  const AutoPlan plan = plan_auto(g);
  std::mt19937_64 rng(31);
  std::size_t compared = 0;
  for (int i = 0; i < 1000; ++i) {
    Word w = testing::random_word(rng, g.generators(), 1 + rng() % 32);
    if (rng() % 2) {
      const Word inv = g.inverse_word(w);
      w.insert(w.end(), inv.begin(), inv.end());
    }
    bool expected;
    try {
      expected = is_identity_oracle(g.automaton(), w, 200'000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++compared;
    ASSERT_EQ(solve_with_plan(g, plan, w).accepted, expected) << g.format_word(w, " ");
    const State s = g.generators()[rng() % g.generators().size()];
    Word conjugate{s};
    conjugate.insert(conjugate.end(), w.begin(), w.end());
    conjugate.push_back(g.inverse(s));
    ASSERT_EQ(solve_with_plan(g, plan, conjugate).accepted, expected);
  }
  EXPECT_GT(compared, 500u);
}

INSTANTIATE_TEST_SUITE_P(Builtins, Agreement, ::testing::Values("grigorchuk", "basilica", "poly1"));

TEST(SolveAuto, Plans) {
  EXPECT_EQ(plan_auto(group("grigorchuk")).method, "bounded");
  EXPECT_EQ(plan_auto(group("basilica")).method, "bounded");
  EXPECT_EQ(plan_auto(group("poly1")).method, "polynomial");
  EXPECT_EQ(plan_auto(group("lamplighter"), 3, 1).method, "oracle");
  const auto& l = group("lamplighter");
  EXPECT_TRUE(solve_auto(l, l.parse_word("a b a^-1 b^-1 b a b^-1 a^-1")).accepted);
}

TEST(StepReport, Json) {
  StepReport r;
  r.solver = "bounded";
  r.input_length = 4;
  r.stages = 1;
  r.tape_lengths = {4};
  r.max_segment = {4};
  r.steps = 12;
  r.accepted = true;
  EXPECT_EQ(to_json(r),
            R"({"input_length":4,"max_segment":[4],"solver":"bounded","stages":1,"steps":12,)"
            R"("tape_lengths":[4],"verdict":"accept"})");
}

}  // namespace
}  // namespace autgroup
