#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>
#include <tuple>

#include "autgroup/builtin.hpp"
#include "autgroup/contraction.hpp"
#include "oracles.hpp"

namespace autgroup {
namespace {

const AutomatonGroup& group(const char* name) {
  static std::map<std::string, std::unique_ptr<AutomatonGroup>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<AutomatonGroup>(builtin_automaton(name));
  return *slot;
}

// l_S by brute force: the shortest word over the generators acting like w on X^m.
std::size_t brute_length(const AutomatonGroup& g, const Word& w, std::size_t max_length,
                         std::size_t level) {
  for (std::size_t n = 0; n <= max_length; ++n) {
    bool found = false;
    testing::for_each_word(g.generators(), n, [&](const Word& u) {
      if (!found && testing::same_on_level(g.automaton(), u, w, level)) found = true;
    });
    if (found) return n;
  }
  return max_length + 1;
}

TEST(CheckItem, GrigorchukStrongContraction) {
  const auto r = check_item(group("grigorchuk"), 10, 3, ContractionMode::item3);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.words_checked, 1048576u);
  EXPECT_LT(r.max_section_sum, 10u);
}

TEST(CheckItem, BasilicaItem3FailsAtTwo) {
  const auto& b = group("basilica");
  const auto r = check_item(b, 2, 1, ContractionMode::item3);
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.witness);
  // Least failing word in generator order a, b, a^-1, b^-1.
  EXPECT_EQ(b.format_word(*r.witness, ""), "aa");
  const Word ab = b.parse_word("ab");
  EXPECT_EQ(b.format_word(section_of_word(b.automaton(), ab, LetterWord{0}), ""), "ea");
  EXPECT_EQ(b.format_word(section_of_word(b.automaton(), ab, LetterWord{1}), ""), "be");
  EXPECT_EQ(word_length(b, b.parse_word("ea"), 2) + word_length(b, b.parse_word("be"), 2), 2u);
}

TEST(CheckItem, TrivialAutomatonIsVacuous) {
  const auto r = check_item(group("trivial"), 1, 1, ContractionMode::item2);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.words_checked, 0u);
}

TEST(CheckItem, SampledAgreesWithFull) {
  CheckOptions options;
  options.sample = 500;
  options.seed = 42;
  const auto r = check_item(group("grigorchuk"), 10, 3, ContractionMode::item3, options);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.words_checked, 500u);
  const auto f = check_item(group("basilica"), 4, 1, ContractionMode::item1, options);
  EXPECT_FALSE(f.passed);
}

TEST(CheckItem, SingleThreadMatchesParallel) {
  CheckOptions one;
  one.threads = 1;
  CheckOptions many;
  many.threads = 4;
  const auto& b = group("basilica");
  const auto r1 = check_item(b, 6, 1, ContractionMode::item1, one);
  const auto r4 = check_item(b, 6, 1, ContractionMode::item1, many);
  EXPECT_EQ(r1.passed, r4.passed);
  EXPECT_EQ(r1.witness, r4.witness);
}

TEST(CheckItem, LengthsAgreeWithBruteForce) {
  const auto& g = group("grigorchuk");
  const Ball ball(g, 4);
  LengthOracle lengths(ball);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const Word w = testing::random_word(rng, g.generators(), 1 + rng() % 4);
    EXPECT_EQ(*lengths.length(w), brute_length(g, w, 4, 10)) << g.format_word(w, "");
  }
}

TEST(FindCertificate, GrigorchukItem3) {
  const auto c = find_certificate(group("grigorchuk"), 10, 3);
  EXPECT_EQ(c.mode(), ContractionMode::item3);
  EXPECT_EQ(c.block_length(), 10u);
  EXPECT_EQ(c.power(), 3u);
}

TEST(FindCertificate, BasilicaNeverItem3) {
  const auto& b = group("basilica");
  const auto c = find_certificate(b, 8, 2);
  EXPECT_NE(c.mode(), ContractionMode::item3);
  EXPECT_EQ(c.mode(), ContractionMode::item1);
  EXPECT_EQ(c.block_length(), 3u);
  EXPECT_EQ(c.power(), 2u);
  EXPECT_EQ(c.lambda_prime(), (Rational{2, 3}));
  for (std::size_t k = 1; k <= 2; ++k) {
    for (std::size_t L = 1; L <= 8; ++L) {
      EXPECT_FALSE(check_item(b, L, k, ContractionMode::item3).passed) << L << ' ' << k;
    }
  }
  EXPECT_TRUE(check_item(b, 1, 1, ContractionMode::item2).passed);
}

TEST(FindCertificate, DegreeOneIsNotContracting) {
  const auto& p = group("poly1");
  EXPECT_THROW(find_certificate(p, 5, 2), NotFound);
  for (std::size_t L = 1; L <= 5; ++L) {
    EXPECT_FALSE(check_item(p, L, 1, ContractionMode::item1).passed);
    EXPECT_FALSE(check_item(p, L, 1, ContractionMode::item3).passed);
  }
}

TEST(Certificate, EntriesAreValid) {
  for (const auto& [name, L, k, mode] :
       std::vector<std::tuple<const char*, std::size_t, std::size_t, ContractionMode>>{
           {"grigorchuk", 3, 1, ContractionMode::item1},
           {"grigorchuk", 4, 2, ContractionMode::item2},
           {"basilica", 3, 2, ContractionMode::item1},
           {"basilica", 2, 1, ContractionMode::item2}}) {
    const auto& g = group(name);
    const auto c = build_certificate(g, L, k, mode);
    EXPECT_TRUE(verify_certificate(g, c)) << name;
    const auto power = alphabet_power(g.automaton(), k);
    Word w;
    for (std::uint64_t i = 0; i < c.indexer().count(); ++i) {
      c.indexer().decode(i, w);
      std::size_t sum = 0;
      for (Letter x = 0; x < c.alphabet_size(); ++x) {
        const auto entry = c.entry(i, x);
        const Word wx(entry.begin(), entry.end());
        EXPECT_TRUE(are_equal(g, wx, section_of_word(power, w, LetterWord{x})));
        sum += wx.size();
        if (mode == ContractionMode::item1) EXPECT_LT(wx.size(), L);
      }
      if (mode == ContractionMode::item2) EXPECT_LE(sum, L);
    }
  }
}

TEST(Certificate, MismatchWhenInequalityFails) {
  EXPECT_THROW(build_certificate(group("basilica"), 2, 1, ContractionMode::item3), CertificateMismatch);
}

TEST(Certificate, SerializationRoundTrips) {
  const auto& g = group("basilica");
  const auto c = build_certificate(g, 3, 2, ContractionMode::item1);
  const std::string text = serialize(g, c);
  EXPECT_EQ(text.substr(0, text.find('\n')), "item1 3 2 2/3");
  const auto parsed = parse_certificate(g, text);
  EXPECT_EQ(serialize(g, parsed), text);
  EXPECT_THROW(parse_certificate(g, "item1 3 2 2/3\nsect: a.a.a 00 -> zz\n"), Error);
}

TEST(Certificate, Monotone) {
  EXPECT_TRUE(check_item(group("basilica"), 2, 1, ContractionMode::item2).passed);
  EXPECT_TRUE(check_item(group("grigorchuk"), 4, 1, ContractionMode::item1).passed);
  CheckOptions options;
  options.sample = 2000;
  options.seed = 5;
  EXPECT_TRUE(check_item(group("grigorchuk"), 20, 3, ContractionMode::item3, options).passed);
}

TEST(Activity, Classification) {
  EXPECT_EQ(classify_activity(group("grigorchuk").automaton()).describe(), "Bounded(2)");
  EXPECT_EQ(classify_activity(group("basilica").automaton()).kind, ActivityClass::Kind::bounded);
  EXPECT_EQ(classify_activity(group("poly1").automaton()).describe(), "Polynomial(1)");
  EXPECT_EQ(classify_activity(group("lamplighter").automaton()).describe(), "Exponential");
  EXPECT_EQ(classify_activity(group("trivial").automaton()).kind, ActivityClass::Kind::bounded);
  EXPECT_THROW(classify_activity(builtin_automaton("lamplighter")), NoIdentityState);
}

std::uint64_t brute_activity(const MealyAutomaton& a, State s, std::size_t n) {
  std::uint64_t count = 0;
  testing::for_each_level_word(a.num_letters(), n, [&](const LetterWord& v) {
    if (!a.is_trivial_state(section_of_word(a, Word{s}, v)[0])) ++count;
  });
  return count;
}

TEST(Activity, CountsMatchEnumeration) {
  for (const char* name : {"grigorchuk", "basilica", "poly1", "lamplighter"}) {
    const auto& a = group(name).automaton();
    for (State s = 0; s < a.num_states(); ++s) {
      for (std::size_t n = 0; n <= 9; ++n) EXPECT_EQ(activity_count(a, s, n), brute_activity(a, s, n));
    }
  }
  const auto& g = group("grigorchuk").automaton();
  const State b = *g.find_state("b");
  for (std::size_t n = 1; n <= 40; ++n) EXPECT_LE(activity_count(g, b, n), 2u);
  EXPECT_EQ(activity_count(g, g.require_identity(), 5), 0u);
}

TEST(Activity, DegreeMatchesGrowthRatio) {
  const auto& a = group("poly1").automaton();
  const State b = *a.find_state("b");
  for (std::size_t n = 8; n <= 16; ++n) {
    const double ratio = static_cast<double>(activity_count(a, b, 2 * n)) /
                         static_cast<double>(activity_count(a, b, n));
    EXPECT_GE(ratio, 1.0);
    EXPECT_LE(ratio, 4.0);
  }
  EXPECT_EQ(activity_count(a, b, 12), 13u);
}

TEST(Loopify, Powers) {
  const auto p = loopify(group("poly1").automaton());
  EXPECT_EQ(p.power, 1u);
  EXPECT_EQ(serialize(p.automaton), serialize(group("poly1").automaton()));
  const auto g = loopify(group("grigorchuk").automaton());
  EXPECT_EQ(g.power, 3u);
  for (const auto length : simple_cycle_lengths(minimize(g.automaton))) EXPECT_EQ(length, 1u);
  EXPECT_EQ(loopify(group("trivial").automaton()).power, 1u);
  EXPECT_THROW(loopify(group("lamplighter").automaton()), Error);
}

TEST(Loopify, GroupUnchanged) {
  const auto& g = group("grigorchuk");
  const auto looped = loopify(g.automaton());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Word w = testing::random_word(rng, g.generators(), rng() % 10);
    EXPECT_EQ(is_identity_oracle(g.automaton(), w), is_identity_oracle(looped.automaton, w));
  }
}

}  // namespace
}  // namespace autgroup
