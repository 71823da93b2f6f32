#include "autgroup/builtin.hpp"

#include <array>
#include <utility>

namespace autgroup {

namespace {

constexpr std::string_view kGrigorchuk = R"(alphabet: 0 1
states: e a b c d
identity: e
trans: e 0 -> e 0
trans: e 1 -> e 1
trans: a 0 -> e 1
trans: a 1 -> e 0
trans: b 0 -> a 0
trans: b 1 -> c 1
trans: c 0 -> a 0
trans: c 1 -> d 1
trans: d 0 -> e 0
trans: d 1 -> b 1
)";

constexpr std::string_view kBasilica = R"(alphabet: 0 1
states: e a b
identity: e
trans: e 0 -> e 0
trans: e 1 -> e 1
trans: a 0 -> e 1
trans: a 1 -> b 0
trans: b 0 -> e 0
trans: b 1 -> a 1
)";

constexpr std::string_view kAdding = R"(alphabet: 0 1
states: e a
identity: e
trans: e 0 -> e 0
trans: e 1 -> e 1
trans: a 0 -> e 1
trans: a 1 -> a 0
)";

constexpr std::string_view kPoly1 = R"(alphabet: 0 1
states: e a b
identity: e
trans: e 0 -> e 0
trans: e 1 -> e 1
trans: a 0 -> e 1
trans: a 1 -> a 0
trans: b 0 -> a 0
trans: b 1 -> b 1
)";

constexpr std::string_view kTrivial = R"(alphabet: 0 1
states: e
identity: e
trans: e 0 -> e 0
trans: e 1 -> e 1
)";

// a and b lie on two different cycles through a.
constexpr std::string_view kLamplighter = R"(alphabet: 0 1
states: a b
trans: a 0 -> a 1
trans: a 1 -> b 0
trans: b 0 -> a 0
trans: b 1 -> b 1
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kBuiltins{{
    {"grigorchuk", kGrigorchuk},
    {"basilica", kBasilica},
    {"adding", kAdding},
    {"poly1", kPoly1},
    {"trivial", kTrivial},
    {"lamplighter", kLamplighter},
}};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : kBuiltins) out.emplace_back(name);
    return out;
  }();
  return names;
}

std::optional<std::string_view> builtin_text(std::string_view name) {
  for (const auto& [builtin, text] : kBuiltins) {
    if (builtin == name) return text;
  }
  return std::nullopt;
}

MealyAutomaton builtin_automaton(std::string_view name) {
  const auto text = builtin_text(name);
  if (!text) throw Error("unknown built-in automaton '" + std::string(name) + "'");
  return parse_automaton(*text);
}

}  // namespace autgroup
