#pragma once

// Contraction certificates (bounded exhaustive search over S^L x X^k) and
// the activity classification of automata: bounded, polynomial of degree d,
// or exponential.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/automaton.hpp"
#include "autgroup/group.hpp"
#include "autgroup/word_engine.hpp"

namespace autgroup {

/// Which inequality a certificate witnesses, for all w in S^L:
///   item1: l_S(w|_x) < L for every x in X^k
///   item2: sum over x in X^k of l_S(w|_x) <= L
///   item3: sum over x in X^k of l_S(w|_x) <  L
enum class ContractionMode { item1, item2, item3 };

std::string_view to_string(ContractionMode mode);
ContractionMode parse_mode(std::string_view text);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct CheckOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;
  /// Check this many uniformly sampled words instead of all of S^L.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultSectionBudget;
};

struct CheckResult {
  bool passed = true;
  /// Lexicographically least failing word among those checked.
  std::optional<Word> witness;
  std::uint64_t words_checked = 0;
  /// Largest single l_S(w|_x) and largest sum seen; L + 1 stands for "> L".
  std::size_t max_section_length = 0;
  std::size_t max_section_sum = 0;
};

/// Mixed-radix index of words of S^L over the group's generators.
class BlockIndexer {
 public:
  BlockIndexer(const AutomatonGroup& group, std::size_t block_length);

  std::size_t block_length() const { return block_length_; }
  std::uint64_t count() const { return count_; }
  /// Index of w, or nullopt when w contains the identity letter.
  std::optional<std::uint64_t> index(std::span<const State> w) const;
  void decode(std::uint64_t index, Word& out) const;

 private:
  std::vector<State> generators_;
  std::vector<std::int64_t> position_;  // state -> digit, -1 when absent
  std::size_t block_length_;
  std::uint64_t count_;
};

/// Tests one inequality over every w in S^L (identity excluded) and every
/// x in X^k, with l_S computed against a ball of radius L.
CheckResult check_item(const AutomatonGroup& group, std::size_t block_length, std::size_t power,
                       ContractionMode mode, const CheckOptions& options = {});

/// Ball-sharing variant; `ball` must have radius >= block_length.
CheckResult check_item(const Ball& ball, std::size_t block_length, std::size_t power,
                       ContractionMode mode, const CheckOptions& options = {});

class ContractionCertificate {
 public:
  ContractionCertificate(const AutomatonGroup& group, ContractionMode mode,
                         std::size_t block_length, std::size_t power, Rational lambda,
                         std::vector<std::uint64_t> offsets, std::vector<State> arena);

  ContractionMode mode() const { return mode_; }
  std::size_t block_length() const { return indexer_.block_length(); }
  std::size_t power() const { return power_; }
  /// lambda' = max |w_x| / L.
  Rational lambda_prime() const { return lambda_; }
  /// lambda = lambda' + (1 - lambda') / 2, the per-stage shrink factor.
  double lambda() const { return lambda_.value() + (1.0 - lambda_.value()) / 2.0; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  const BlockIndexer& indexer() const { return indexer_; }

  /// Shortest word equal to w|_x for a block w in S^L and x in X^k.
  std::span<const State> entry(std::uint64_t block, Letter x) const;
  std::span<const State> entry(std::span<const State> block, Letter x) const;
  std::size_t num_entries() const { return offsets_.size() - 1; }

 private:
  ContractionMode mode_;
  std::size_t power_;
  std::size_t alphabet_size_;
  Rational lambda_;
  BlockIndexer indexer_;
  std::vector<std::uint64_t> offsets_;
  std::vector<State> arena_;
};

/// Builds the table {w_x} for a passing (L, k, mode); throws
/// CertificateMismatch if the inequality does not hold.
ContractionCertificate build_certificate(const AutomatonGroup& group, std::size_t block_length,
                                         std::size_t power, ContractionMode mode,
                                         const CheckOptions& options = {});

/// Tries item3 over all (k, L) in lexicographic order up to the bounds,
/// then item1, then item2. Throws NotFound.
ContractionCertificate find_certificate(const AutomatonGroup& group, std::size_t max_block,
                                        std::size_t max_power, const CheckOptions& options = {});

/// Re-checks every entry: w_x = w|_x in the group and the mode inequality.
bool verify_certificate(const AutomatonGroup& group, const ContractionCertificate& certificate,
                        std::size_t budget = kDefaultSectionBudget);

/// Text form: "mode L k num/den" then "sect: <w> <x> -> <w_x>" lines; words
/// are state names joined by '.', the empty word is "-".
std::string serialize(const AutomatonGroup& group, const ContractionCertificate& certificate);
ContractionCertificate parse_certificate(const AutomatonGroup& group, std::string_view text);

struct ActivityClass {
  enum class Kind { bounded, polynomial, exponential };
  Kind kind = Kind::bounded;
  /// Bounded: the uniform bound C on nontrivial sections per level.
  std::uint64_t bound = 0;
  /// Polynomial: the degree d >= 1.
  std::size_t degree = 0;

  std::string describe() const;
};

/// Exact number of v in X^n with s|_v != e (saturating at 2^64 - 1).
std::uint64_t activity_count(const MealyAutomaton& automaton, State s, std::size_t n);

/// Cycle structure of the nontrivial part of a minimal automaton with a
/// trivial state. Throws NoIdentityState.
ActivityClass classify_activity(const MealyAutomaton& automaton);

/// Lengths of the simple cycles through nontrivial states, one entry per
/// cycle. Only meaningful when the cycles are disjoint.
std::vector<std::size_t> simple_cycle_lengths(const MealyAutomaton& automaton);

struct Loopified {
  MealyAutomaton automaton;
  std::size_t power = 1;
};

/// Passes to X^k, k = lcm of the simple cycle lengths, so that every simple
/// cycle at a nontrivial state becomes a loop. Throws Error for automata of
/// exponential activity.
Loopified loopify(const MealyAutomaton& automaton);

}  // namespace autgroup
