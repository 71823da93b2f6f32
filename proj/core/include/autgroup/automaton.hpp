#pragma once

// Mealy automata over a finite alphabet and the self-similar action they define.
//
// Composition convention: a word w = s1 s2 ... sn acts on X^* left to right,
// i.e. o(s w, v) = o(w, o(s, v)). The first letter acts first. Sections
// follow the same convention: (s w)|_x = s|_x  w|_{pi_s(x)}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/errors.hpp"

namespace autgroup {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// Word over the states of an automaton (an element of S^*).
using Word = std::vector<State>;
/// Word over the alphabet (an element of X^*).
using LetterWord = std::vector<Letter>;

/// Permutation of the alphabet; image[x] is where x goes.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Letter> image);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return image_.size(); }
  Letter operator()(Letter x) const { return image_[x]; }
  const std::vector<Letter>& image() const { return image_; }
  bool is_identity() const;

  /// Left-to-right product: (p * q)(x) = q(p(x)).
  Permutation then(const Permutation& q) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Letter> image_;
};

/// Finite invertible transducer (S, X, t, o), immutable after construction.
class MealyAutomaton {
 public:
  /// Tables are row-major by state: next[s * |X| + x], out[s * |X| + x].
  /// Validates totality, invertibility and the identity state. When
  /// `identity` is empty a trivial state is detected automatically.
  MealyAutomaton(std::vector<std::string> alphabet, std::vector<std::string> states,
                 std::vector<State> next, std::vector<Letter> out,
                 std::optional<State> identity = std::nullopt);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }

  State next(State s, Letter x) const { return next_[s * alphabet_.size() + x]; }
  Letter out(State s, Letter x) const { return out_[s * alphabet_.size() + x]; }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(State s) const { return states_[s]; }
  const std::string& letter_name(Letter x) const { return alphabet_[x]; }

  std::optional<State> identity() const { return identity_; }
  /// Throws NoIdentityState when there is none.
  State require_identity() const;

  std::optional<State> find_state(std::string_view name) const;
  std::optional<Letter> find_letter(std::string_view name) const;

  Permutation permutation(State s) const;
  /// True if s fixes every letter and all its transitions are self-loops.
  bool is_trivial_state(State s) const;

  const std::vector<State>& next_table() const { return next_; }
  const std::vector<Letter>& out_table() const { return out_; }

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  std::vector<State> next_;
  std::vector<Letter> out_;
  std::optional<State> identity_;
};

/// Reads the line-oriented automaton format:
///   alphabet: 0 1
///   states: e a b
///   identity: e          (optional)
///   trans: a 0 -> e 1    (state input -> next-state output)
MealyAutomaton parse_automaton(std::string_view text);

/// Normalized text form; transitions sorted by state then letter order.
std::string serialize(const MealyAutomaton& automaton);

/// Name used for the formal inverse of a state ("a" <-> "a^-1").
std::string inverse_name(std::string_view name);

/// Inverse automaton with states s^-1 in the same order as the states s.
/// The identity state keeps its own name.
MealyAutomaton invert(const MealyAutomaton& automaton);

struct Minimization {
  MealyAutomaton automaton;
  /// class_of[s] is the state of `automaton` that s was merged into.
  std::vector<State> class_of;
};

/// Moore partition refinement on (output row, successor classes). Each
/// class keeps the name of its lowest-index member; classes are numbered
/// by that member.
Minimization minimize_with_map(const MealyAutomaton& automaton);
MealyAutomaton minimize(const MealyAutomaton& automaton);

/// The same automaton read k letters at a time. Letters of X^k are ordered
/// lexicographically (first letter most significant).
MealyAutomaton alphabet_power(const MealyAutomaton& automaton, std::size_t k);

/// Index of a word of X^k in the alphabet of alphabet_power(A, k).
Letter encode_block(std::span<const Letter> block, std::size_t num_letters);
LetterWord decode_block(Letter code, std::size_t num_letters, std::size_t k);

/// pi_w: the permutation of X induced by w, composed left to right.
Permutation perm_of_word(const MealyAutomaton& automaton, std::span<const State> w);

/// Writes w|_x (one letter x) into `out` and returns pi_w(x). `out` may not
/// alias `w`.
Letter section_step(const MealyAutomaton& automaton, std::span<const State> w, Letter x,
                    Word& out);

/// w|_x for a word x over X, computed by the dual automaton one letter at a
/// time. The result has the same length as w.
Word section_of_word(const MealyAutomaton& automaton, std::span<const State> w,
                     std::span<const Letter> x);

/// o(w, v): the image of v under w.
LetterWord apply(const MealyAutomaton& automaton, std::span<const State> w,
                 std::span<const Letter> v);

/// Resolves state names; throws UnknownLetter.
Word word_from_names(const MealyAutomaton& automaton, std::span<const std::string> names);
LetterWord letters_from_names(const MealyAutomaton& automaton,
                              std::span<const std::string> names);
/// Letters given as a string of single-character names, e.g. "0110".
LetterWord letters_from_string(const MealyAutomaton& automaton, std::string_view text);

std::string format_letters(const MealyAutomaton& automaton, std::span<const Letter> v);

}  // namespace autgroup
