#pragma once

// Exact word problem by exhaustive sections, element identity, word length
// and growth. Everything here is exponential in the worst case and guarded
// by an explicit budget on the number of distinct section words.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "autgroup/automaton.hpp"
#include "autgroup/group.hpp"

namespace autgroup {

inline constexpr std::size_t kDefaultSectionBudget = 2'000'000;

namespace detail {

/// Open-addressing set of words of one fixed length, stored contiguously.
class FixedWordIndex {
 public:
  explicit FixedWordIndex(std::size_t length);

  std::size_t size() const { return count_; }
  std::size_t length() const { return length_; }
  std::span<const State> word(std::size_t id) const {
    return {arena_.data() + id * length_, length_};
  }
  /// Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const State> w);
  std::optional<std::uint32_t> find(std::span<const State> w) const;

 private:
  std::size_t hash(std::span<const State> w) const;
  void grow();

  std::size_t length_;
  std::size_t count_ = 0;
  std::vector<State> arena_;
  std::vector<std::uint32_t> slots_;  // id + 1, 0 = empty
};

struct WordHash {
  std::size_t operator()(const std::vector<std::uint32_t>& w) const noexcept;
};

}  // namespace detail

/// All sections of a word, closed under single-letter sections. Section
/// words keep identity letters, so all of them have length |w|. Node 0 is w.
class SectionTable {
 public:
  std::size_t size() const { return index_.size(); }
  std::size_t num_letters() const { return num_letters_; }
  std::size_t word_length() const { return index_.length(); }
  std::span<const State> word(std::size_t node) const { return index_.word(node); }
  std::uint32_t successor(std::size_t node, Letter x) const {
    return successors_[node * num_letters_ + x];
  }
  Letter image(std::size_t node, Letter x) const { return images_[node * num_letters_ + x]; }
  bool trivial_permutation(std::size_t node) const;

 private:
  friend SectionTable sections_closure(const MealyAutomaton&, std::span<const State>, std::size_t);
  SectionTable(std::size_t length, std::size_t num_letters)
      : index_(length), num_letters_(num_letters) {}

  detail::FixedWordIndex index_;
  std::size_t num_letters_;
  std::vector<std::uint32_t> successors_;
  std::vector<Letter> images_;
};

/// BFS over single-letter sections of w. Throws BudgetExceeded.
SectionTable sections_closure(const MealyAutomaton& automaton, std::span<const State> w,
                              std::size_t budget = kDefaultSectionBudget);

/// True iff w acts trivially on X^*: every section permutes X trivially.
/// Stops at the first nontrivial section. Throws BudgetExceeded.
bool is_identity_oracle(const MealyAutomaton& automaton, std::span<const State> w,
                        std::size_t budget = kDefaultSectionBudget);
/// As above; `visited` receives the number of section words expanded.
bool is_identity_oracle(const MealyAutomaton& automaton, std::span<const State> w,
                        std::size_t budget, std::size_t& visited);

/// u = v in the group, decided as u v^-1 = e.
bool are_equal(const AutomatonGroup& group, std::span<const State> u, std::span<const State> v,
               std::size_t budget = kDefaultSectionBudget);

/// Serialization of the minimized transducer of w's sections; equal keys
/// iff equal transformations of X^*.
using CanonicalKey = std::vector<std::uint32_t>;

CanonicalKey canonical_key(const MealyAutomaton& automaton, std::span<const State> w,
                           std::size_t budget = kDefaultSectionBudget);

/// Elements of word length <= radius over the group's generators, found by
/// BFS with canonical-key deduplication. Representatives are the first
/// shortest words met (generators tried in order).
class Ball {
 public:
  Ball(const AutomatonGroup& group, std::size_t radius,
       std::size_t budget = kDefaultSectionBudget);

  std::size_t radius() const { return radius_; }
  std::size_t size() const { return lengths_.size(); }
  std::size_t length(std::size_t element) const { return lengths_[element]; }
  Word representative(std::size_t element) const;
  /// Number of elements of length exactly n (n <= radius).
  std::uint64_t sphere(std::size_t n) const { return spheres_[n]; }

  std::optional<std::size_t> find(const CanonicalKey& key) const;
  /// Element index of w, or nullopt when l_S(w) > radius.
  std::optional<std::size_t> locate(std::span<const State> w) const;

  const AutomatonGroup& group() const { return *group_; }

 private:
  const AutomatonGroup* group_;
  std::size_t radius_;
  std::size_t budget_;
  std::vector<std::uint32_t> lengths_;
  std::vector<std::size_t> offsets_;
  std::vector<State> arena_;
  std::vector<std::uint64_t> spheres_;
  std::unordered_map<CanonicalKey, std::uint32_t, detail::WordHash> keys_;
};

/// Memoized l_S lookups against a ball; not thread-safe, one per worker.
class LengthOracle {
 public:
  explicit LengthOracle(const Ball& ball) : ball_(&ball) {}

  /// l_S(w), or nullopt when it exceeds the ball radius.
  std::optional<std::size_t> length(std::span<const State> w);
  /// Shortest representative of w, or nullopt when l_S(w) > radius.
  std::optional<Word> shortest(std::span<const State> w);

 private:
  std::optional<std::uint32_t> element(std::span<const State> w);

  const Ball* ball_;
  std::unordered_map<std::vector<State>, std::int64_t, detail::WordHash> cache_;
};

/// l_S of the element represented by w. Throws NotInBall(radius).
std::size_t word_length(const AutomatonGroup& group, std::span<const State> w, std::size_t radius,
                        std::size_t budget = kDefaultSectionBudget);

struct GrowthTable {
  std::size_t radius = 0;
  /// values[m] = number of elements of length <= m.
  std::vector<std::uint64_t> values;
  std::string generating_set;
};

GrowthTable growth(const AutomatonGroup& group, std::size_t radius,
                   std::size_t budget = kDefaultSectionBudget);

/// CSV rows "n,gamma".
std::string growth_csv(const GrowthTable& table);

}  // namespace autgroup
