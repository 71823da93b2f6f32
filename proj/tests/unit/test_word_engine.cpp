#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "autgroup/builtin.hpp"
#include "autgroup/word_engine.hpp"
#include "oracles.hpp"

namespace autgroup {
namespace {

const AutomatonGroup& grigorchuk() {
  static const AutomatonGroup g(builtin_automaton("grigorchuk"));
  return g;
}

const AutomatonGroup& basilica() {
  static const AutomatonGroup g(builtin_automaton("basilica"));
  return g;
}

TEST(SectionsClosure, GrigorchukB) {
  const auto& g = grigorchuk();
  const auto table = sections_closure(g.automaton(), g.parse_word("b"));
  std::set<std::string> members;
  for (std::size_t i = 0; i < table.size(); ++i) members.insert(g.format_word(table.word(i), ""));
  EXPECT_EQ(members, (std::set<std::string>{"a", "b", "c", "d", "e"}));
  const State b = *g.automaton().find_state("b");
  const auto name_of = [&](std::size_t node) { return g.format_word(table.word(node), ""); };
  ASSERT_EQ(table.word(0)[0], b);
  EXPECT_EQ(name_of(table.successor(0, 0)), "a");
  EXPECT_EQ(name_of(table.successor(0, 1)), "c");
}

TEST(SectionsClosure, IdentityWord) {
  const auto& g = grigorchuk();
  const auto table = sections_closure(g.automaton(), g.parse_word("e"));
  EXPECT_EQ(table.size(), 1u);
}

TEST(SectionsClosure, AaCollapsesAfterOneLevel) {
  const auto& g = grigorchuk();
  const auto table = sections_closure(g.automaton(), g.parse_word("aa"));
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(g.format_word(table.word(1), ""), "ee");
  for (std::size_t i = 0; i < table.size(); ++i) EXPECT_EQ(table.word(i).size(), 2u);
}

TEST(SectionsClosure, BudgetIsExplicit) {
  const auto& b = basilica();
  EXPECT_THROW(sections_closure(b.automaton(), b.parse_word("(a b)^8"), 4), BudgetExceeded);
  EXPECT_THROW(is_identity_oracle(b.automaton(), b.parse_word("(a B)^4 (A b)^4"), 2), BudgetExceeded);
}

TEST(Oracle, GrigorchukExamples) {
  const auto& g = grigorchuk();
  const auto& a = g.automaton();
  EXPECT_TRUE(is_identity_oracle(a, g.parse_word("aa")));
  EXPECT_FALSE(is_identity_oracle(a, g.parse_word("a")));
  const Word w16 = g.parse_word("(ab)^16");
  const Word w8 = g.parse_word("(ab)^8");
  EXPECT_TRUE(is_identity_oracle(a, w16));
  EXPECT_FALSE(is_identity_oracle(a, w8));
  EXPECT_TRUE(testing::trivial_on_level(a, w16, 10));
  EXPECT_FALSE(testing::trivial_on_level(a, w8, 10));
}

TEST(Oracle, SoundOnLevels) {
  std::mt19937_64 rng(7);
  for (const auto* group : {&grigorchuk(), &basilica()}) {
    for (int i = 0; i < 400; ++i) {
      const Word w = testing::random_word(rng, group->generators(), 1 + rng() % 8);
      const bool trivial = is_identity_oracle(group->automaton(), w);
      if (trivial) {
        EXPECT_TRUE(testing::trivial_on_level(group->automaton(), w, 12));
      }
      if (group->reduce(w).empty()) EXPECT_TRUE(trivial);
    }
  }
}

TEST(AreEqual, Examples) {
  const auto& g = grigorchuk();
  const Word u = g.parse_word("abc");
  EXPECT_TRUE(are_equal(g, u, u));
  EXPECT_TRUE(are_equal(g, g.parse_word("bcd"), g.parse_word("eee")));
  EXPECT_TRUE(are_equal(g, g.parse_word("cd"), g.parse_word("b")));
  const auto& b = basilica();
  EXPECT_FALSE(are_equal(b, b.parse_word("ab"), b.parse_word("ba")));
}

TEST(CanonicalKey, RespectsEqualityOnSamples) {
  const auto& g = grigorchuk();
  std::mt19937_64 rng(9);
  std::vector<Word> words;
  for (int i = 0; i < 60; ++i) words.push_back(testing::random_word(rng, g.generators(), rng() % 7));
  std::vector<CanonicalKey> keys;
  for (const auto& w : words) keys.push_back(canonical_key(g.automaton(), w));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i; j < words.size(); ++j) {
      const bool equal = are_equal(g, words[i], words[j]);
      EXPECT_EQ(keys[i] == keys[j], equal);
      if (equal) EXPECT_TRUE(testing::same_on_level(g.automaton(), words[i], words[j], 10));
    }
  }
}

TEST(CanonicalKey, Deterministic) {
  const auto& b = basilica();
  const Word w = b.parse_word("a b A a B");
  EXPECT_EQ(canonical_key(b.automaton(), w), canonical_key(b.automaton(), w));
  EXPECT_EQ(canonical_key(b.automaton(), w), canonical_key(b.automaton(), b.parse_word("a e b B")));
}

TEST(WordLength, Examples) {
  const auto& g = grigorchuk();
  EXPECT_EQ(word_length(g, g.parse_word("eee"), 3), 0u);
  EXPECT_EQ(word_length(g, g.parse_word("cd"), 3), 1u);
  const AutomatonGroup add(builtin_automaton("adding"));
  EXPECT_EQ(word_length(add, add.parse_word("aaa"), 5), 3u);
  EXPECT_EQ(word_length(add, add.parse_word("a a A a a"), 5), 3u);
  EXPECT_THROW(word_length(add, add.parse_word("aaaa"), 3), NotInBall);
}

TEST(WordLength, ReducedBoundAndTriangleInequality) {
  const auto& b = basilica();
  const Ball ball(b, 6);
  LengthOracle lengths(ball);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Word u = testing::random_word(rng, b.generators(), rng() % 4);
    const Word v = testing::random_word(rng, b.generators(), rng() % 4);
    Word uv(u);
    uv.insert(uv.end(), v.begin(), v.end());
    const auto lu = lengths.length(u);
    const auto lv = lengths.length(v);
    const auto luv = lengths.length(uv);
    ASSERT_TRUE(lu && lv && luv);
    EXPECT_LE(*lu, b.reduce(u).size());
    EXPECT_LE(*luv, *lu + *lv);
    const auto shortest = lengths.shortest(uv);
    ASSERT_TRUE(shortest);
    EXPECT_EQ(shortest->size(), *luv);
    EXPECT_TRUE(are_equal(b, *shortest, uv));
  }
}

TEST(Growth, AddingMachineIsZ) {
  const AutomatonGroup add(builtin_automaton("adding"));
  const auto table = growth(add, 12);
  ASSERT_EQ(table.values.size(), 13u);
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(table.values[n], 2 * n + 1);
}

TEST(Growth, GrigorchukPinned) {
  const auto table = growth(grigorchuk(), 8);
  EXPECT_EQ(table.values, (std::vector<std::uint64_t>{1, 5, 11, 23, 40, 68, 108, 176, 271}));
}

TEST(Growth, MonotoneAndSubmultiplicative) {
  for (const char* name : {"grigorchuk", "basilica", "poly1"}) {
    const AutomatonGroup g(builtin_automaton(name));
    const auto table = growth(g, 6);
    EXPECT_EQ(table.values[0], 1u);
    for (std::size_t m = 1; m < table.values.size(); ++m) {
      EXPECT_GE(table.values[m], table.values[m - 1]);
    }
    for (std::size_t m = 0; m <= 6; ++m) {
      for (std::size_t n = 0; m + n <= 6; ++n) {
        EXPECT_LE(table.values[m + n], table.values[m] * table.values[n]) << name;
      }
    }
  }
}

TEST(Growth, Csv) {
  const AutomatonGroup add(builtin_automaton("adding"));
  EXPECT_EQ(growth_csv(growth(add, 2)), "n,gamma\n0,1\n1,3\n2,5\n");
}

TEST(Ball, SpheresAndRepresentatives) {
  const Ball ball(grigorchuk(), 5);
  std::uint64_t total = 0;
  for (std::size_t n = 0; n <= 5; ++n) total += ball.sphere(n);
  EXPECT_EQ(total, ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Word r = ball.representative(i);
    EXPECT_EQ(r.size(), ball.length(i));
    EXPECT_EQ(ball.locate(r), i);
  }
}

}  // namespace
}  // namespace autgroup
