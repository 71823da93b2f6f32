#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/automaton.hpp"

namespace autgroup {

/// grigorchuk, basilica, adding, poly1, trivial, lamplighter.
const std::vector<std::string>& builtin_names();

/// Automaton file text of a built-in, or nullopt.
std::optional<std::string_view> builtin_text(std::string_view name);

/// Throws Error for unknown names.
MealyAutomaton builtin_automaton(std::string_view name);

}  // namespace autgroup
