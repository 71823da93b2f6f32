#include "autgroup/group.hpp"

#include <algorithm>
#include <cctype>

namespace autgroup {

namespace {

MealyAutomaton union_with_inverse(const MealyAutomaton& automaton, State& identity) {
  const std::size_t nx = automaton.num_letters();
  const std::size_t ns = automaton.num_states();
  const MealyAutomaton inv = invert(automaton);

  std::vector<std::string> names = automaton.state_names();
  std::vector<State> next = automaton.next_table();
  std::vector<Letter> out = automaton.out_table();
  for (State s = 0; s < ns; ++s) {
    names.push_back(inverse_name(automaton.state_name(s)));
    for (Letter x = 0; x < nx; ++x) {
      next.push_back(static_cast<State>(inv.next(s, x) + ns));
      out.push_back(inv.out(s, x));
    }
  }
  if (automaton.identity()) {
    identity = *automaton.identity();
  } else {
    std::string name = "e";
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    identity = static_cast<State>(names.size());
    names.push_back(name);
    for (Letter x = 0; x < nx; ++x) {
      next.push_back(identity);
      out.push_back(x);
    }
  }
  return MealyAutomaton(automaton.alphabet(), std::move(names), std::move(next), std::move(out),
                        identity);
}

}  // namespace

AutomatonGroup::AutomatonGroup(const MealyAutomaton& automaton)
    : automaton_([&] {
        State identity = 0;
        return union_with_inverse(automaton, identity);
      }()) {
  const std::size_t ns = automaton.num_states();
  const MealyAutomaton doubled = automaton_;
  Minimization minimal = minimize_with_map(doubled);
  automaton_ = std::move(minimal.automaton);
  identity_ = *automaton_.identity();

  inverse_.assign(automaton_.num_states(), identity_);
  for (State s = 0; s < ns; ++s) {
    inverse_[minimal.class_of[s]] = minimal.class_of[s + ns];
    inverse_[minimal.class_of[s + ns]] = minimal.class_of[s];
  }
  for (State s = 0; s < automaton_.num_states(); ++s) {
    if (s != identity_) generators_.push_back(s);
  }

  for (State s = 0; s < doubled.num_states(); ++s) {
    syntax_.names.emplace_back(doubled.state_name(s), minimal.class_of[s]);
  }
  for (State s = 0; s < ns; ++s) {
    const std::string& name = automaton.state_name(s);
    if (name.size() != 1 || !std::islower(static_cast<unsigned char>(name[0]))) continue;
    const std::string upper(1, static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))));
    const bool taken = std::any_of(syntax_.names.begin(), syntax_.names.end(),
                                   [&](const auto& entry) { return entry.first == upper; });
    if (!taken) syntax_.names.emplace_back(upper, minimal.class_of[s + ns]);
  }
  syntax_.inverse = [inverse = inverse_](std::uint32_t s) { return inverse[s]; };
}

Word AutomatonGroup::inverse_word(std::span<const State> w) const {
  Word result(w.rbegin(), w.rend());
  for (auto& s : result) s = inverse_[s];
  return result;
}

Word AutomatonGroup::strip_identity(std::span<const State> w) const {
  Word result;
  result.reserve(w.size());
  for (const State s : w) {
    if (s != identity_) result.push_back(s);
  }
  return result;
}

Word AutomatonGroup::reduce(std::span<const State> w) const {
  Word result;
  result.reserve(w.size());
  for (const State s : w) {
    if (s == identity_) continue;
    if (!result.empty() && inverse_[result.back()] == s) {
      result.pop_back();
    } else {
      result.push_back(s);
    }
  }
  return result;
}

Word AutomatonGroup::parse_word(std::string_view text) const {
  return autgroup::parse_word(text, syntax_);
}

std::string AutomatonGroup::format_word(std::span<const State> w,
                                        std::string_view separator) const {
  std::string result;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) result += separator;
    result += automaton_.state_name(w[i]);
  }
  return result;
}

}  // namespace autgroup
