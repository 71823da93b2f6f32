#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/automaton.hpp"
#include "autgroup/word_syntax.hpp"

namespace autgroup {

/// An automaton group with its generating set closed under inversion.
///
/// Built as the minimized disjoint union of A and invert(A); states that
/// define the same transformation merge, so involutions are their own
/// inverses. A trivial state is always present (one is added if A has none).
class AutomatonGroup {
 public:
  explicit AutomatonGroup(const MealyAutomaton& automaton);

  const MealyAutomaton& automaton() const { return automaton_; }
  State identity() const { return identity_; }
  State inverse(State s) const { return inverse_[s]; }
  /// Nontrivial states in order; the enumeration alphabet S \ {e}.
  const std::vector<State>& generators() const { return generators_; }
  std::size_t num_letters() const { return automaton_.num_letters(); }

  /// Formal inverse: reversed word of inverse letters.
  Word inverse_word(std::span<const State> w) const;
  /// Strips the identity letter and cancels adjacent s s^-1 pairs.
  Word reduce(std::span<const State> w) const;
  Word strip_identity(std::span<const State> w) const;

  /// Accepts state names, inverse names ("a^-1"), upper-case inverses for
  /// single lower-case names ("A"), parentheses and integer powers.
  Word parse_word(std::string_view text) const;
  std::string format_word(std::span<const State> w, std::string_view separator = " ") const;
  const WordSyntax& syntax() const { return syntax_; }

 private:
  MealyAutomaton automaton_;
  State identity_ = 0;
  std::vector<State> inverse_;
  std::vector<State> generators_;
  WordSyntax syntax_;
};

}  // namespace autgroup
