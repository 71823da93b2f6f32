#include "autgroup/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace autgroup {

Permutation::Permutation(std::size_t degree) : image_(degree) {
  std::iota(image_.begin(), image_.end(), Letter{0});
}

Permutation::Permutation(std::vector<Letter> image) : image_(std::move(image)) {}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::then(const Permutation& q) const {
  std::vector<Letter> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[i] = q.image_[image_[i]];
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Letter> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[image_[i]] = static_cast<Letter>(i);
  return Permutation(std::move(image));
}

MealyAutomaton::MealyAutomaton(std::vector<std::string> alphabet, std::vector<std::string> states,
                               std::vector<State> next, std::vector<Letter> out,
                               std::optional<State> identity)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      next_(std::move(next)),
      out_(std::move(out)),
      identity_(identity) {
  const std::size_t nx = alphabet_.size();
  const std::size_t ns = states_.size();
  if (nx == 0) throw ParseError("empty alphabet");
  if (next_.size() != ns * nx || out_.size() != ns * nx) {
    throw Error("transition tables do not match |S| x |X|");
  }
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<bool> seen(nx, false);
    for (std::size_t x = 0; x < nx; ++x) {
      const Letter y = out_[s * nx + x];
      if (next_[s * nx + x] >= ns || y >= nx) throw Error("transition table out of range");
      if (seen[y]) throw NonInvertibleState(states_[s]);
      seen[y] = true;
    }
  }
  if (identity_) {
    if (*identity_ >= ns) throw Error("identity state out of range");
    if (!is_trivial_state(*identity_)) {
      throw ParseError("declared identity '" + states_[*identity_] + "' acts nontrivially");
    }
  } else {
    for (State s = 0; s < ns; ++s) {
      if (is_trivial_state(s)) {
        identity_ = s;
        break;
      }
    }
  }
}

State MealyAutomaton::require_identity() const {
  if (!identity_) throw NoIdentityState();
  return *identity_;
}

std::optional<State> MealyAutomaton::find_state(std::string_view name) const {
  for (std::size_t s = 0; s < states_.size(); ++s) {
    if (states_[s] == name) return static_cast<State>(s);
  }
  return std::nullopt;
}

std::optional<Letter> MealyAutomaton::find_letter(std::string_view name) const {
  for (std::size_t x = 0; x < alphabet_.size(); ++x) {
    if (alphabet_[x] == name) return static_cast<Letter>(x);
  }
  return std::nullopt;
}

Permutation MealyAutomaton::permutation(State s) const {
  const std::size_t nx = alphabet_.size();
  return Permutation(std::vector<Letter>(out_.begin() + s * nx, out_.begin() + (s + 1) * nx));
}

bool MealyAutomaton::is_trivial_state(State s) const {
  for (Letter x = 0; x < alphabet_.size(); ++x) {
    if (next(s, x) != s || out(s, x) != x) return false;
  }
  return true;
}

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

MealyAutomaton parse_automaton(std::string_view text) {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::optional<std::string> identity_name;
  struct Rule {
    std::string state, input, next, output;
    std::size_t line;
  };
  std::vector<Rule> rules;
  bool have_alphabet = false;
  bool have_states = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
    }
    const std::string_view key = trim(line.substr(0, colon));
    const std::vector<std::string> value = split_ws(line.substr(colon + 1));
    if (key == "alphabet") {
      if (have_alphabet) throw ParseError("line " + std::to_string(line_no) + ": repeated alphabet");
      have_alphabet = true;
      for (const auto& x : value) {
        if (std::find(alphabet.begin(), alphabet.end(), x) != alphabet.end()) throw DuplicateState(x);
        alphabet.push_back(x);
      }
    } else if (key == "states") {
      if (have_states) throw ParseError("line " + std::to_string(line_no) + ": repeated states");
      have_states = true;
      for (const auto& s : value) {
        if (std::find(states.begin(), states.end(), s) != states.end()) throw DuplicateState(s);
        states.push_back(s);
      }
    } else if (key == "identity") {
      if (value.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": identity takes one name");
      identity_name = value.front();
    } else if (key == "trans") {
      if (value.size() != 5 || value[2] != "->") {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'trans: s x -> t y'");
      }
      rules.push_back({value[0], value[1], value[3], value[4], line_no});
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_alphabet || alphabet.empty()) throw ParseError("missing alphabet");
  if (!have_states || states.empty()) throw ParseError("missing states");

  auto state_index = [&](const std::string& name) -> State {
    const auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw UnknownLetter(name);
    return static_cast<State>(it - states.begin());
  };
  auto letter_index = [&](const std::string& name) -> Letter {
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) throw UnknownLetter(name);
    return static_cast<Letter>(it - alphabet.begin());
  };

  const std::size_t nx = alphabet.size();
  constexpr State kUnset = ~State{0};
  std::vector<State> next(states.size() * nx, kUnset);
  std::vector<Letter> out(states.size() * nx, 0);
  for (const auto& rule : rules) {
    const State s = state_index(rule.state);
    const Letter x = letter_index(rule.input);
    const std::size_t cell = s * nx + x;
    if (next[cell] != kUnset) {
      throw ParseError("line " + std::to_string(rule.line) + ": duplicate transition for (" +
                       rule.state + ", " + rule.input + ")");
    }
    next[cell] = state_index(rule.next);
    out[cell] = letter_index(rule.output);
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t x = 0; x < nx; ++x) {
      if (next[s * nx + x] == kUnset) throw MissingTransition(states[s], alphabet[x]);
    }
  }
  std::optional<State> identity;
  if (identity_name) identity = state_index(*identity_name);
  return MealyAutomaton(std::move(alphabet), std::move(states), std::move(next), std::move(out),
                        identity);
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string result;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) result += ' ';
    result += items[i];
  }
  return result;
}

}  // namespace

std::string serialize(const MealyAutomaton& automaton) {
  std::ostringstream out;
  out << "alphabet: " << join(automaton.alphabet()) << '\n';
  out << "states: " << join(automaton.state_names()) << '\n';
  if (automaton.identity()) out << "identity: " << automaton.state_name(*automaton.identity()) << '\n';
  for (State s = 0; s < automaton.num_states(); ++s) {
    for (Letter x = 0; x < automaton.num_letters(); ++x) {
      out << "trans: " << automaton.state_name(s) << ' ' << automaton.letter_name(x) << " -> "
          << automaton.state_name(automaton.next(s, x)) << ' '
          << automaton.letter_name(automaton.out(s, x)) << '\n';
    }
  }
  return out.str();
}

std::string inverse_name(std::string_view name) {
  constexpr std::string_view suffix = "^-1";
  if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
    return std::string(name.substr(0, name.size() - suffix.size()));
  }
  return std::string(name) + std::string(suffix);
}

MealyAutomaton invert(const MealyAutomaton& automaton) {
  const std::size_t nx = automaton.num_letters();
  const std::size_t ns = automaton.num_states();
  std::vector<std::string> names(ns);
  std::vector<State> next(ns * nx);
  std::vector<Letter> out(ns * nx);
  for (State s = 0; s < ns; ++s) {
    names[s] = automaton.identity() == s ? automaton.state_name(s)
                                         : inverse_name(automaton.state_name(s));
    for (Letter x = 0; x < nx; ++x) {
      const Letter y = automaton.out(s, x);
      next[s * nx + y] = automaton.next(s, x);
      out[s * nx + y] = x;
    }
  }
  return MealyAutomaton(automaton.alphabet(), std::move(names), std::move(next), std::move(out),
                        automaton.identity());
}

Minimization minimize_with_map(const MealyAutomaton& automaton) {
  const std::size_t nx = automaton.num_letters();
  const std::size_t ns = automaton.num_states();

  // Initial partition: equal output rows.
  std::vector<State> block(ns);
  {
    std::map<std::vector<Letter>, State> ids;
    for (State s = 0; s < ns; ++s) {
      const auto row = automaton.permutation(s).image();
      block[s] = ids.try_emplace(row, static_cast<State>(ids.size())).first->second;
    }
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<State>, State> ids;
    std::vector<State> refined(ns);
    for (State s = 0; s < ns; ++s) {
      std::vector<State> signature;
      signature.reserve(nx + 1);
      signature.push_back(block[s]);
      for (Letter x = 0; x < nx; ++x) signature.push_back(block[automaton.next(s, x)]);
      refined[s] = ids.try_emplace(std::move(signature), static_cast<State>(ids.size())).first->second;
    }
    block = std::move(refined);
    if (ids.size() == count) break;
    count = ids.size();
  }

  // Renumber classes by their lowest member.
  constexpr State kUnset = ~State{0};
  std::vector<State> number(count, kUnset);
  std::vector<State> representative;
  for (State s = 0; s < ns; ++s) {
    if (number[block[s]] == kUnset) {
      number[block[s]] = static_cast<State>(representative.size());
      representative.push_back(s);
    }
  }
  std::vector<State> class_of(ns);
  for (State s = 0; s < ns; ++s) class_of[s] = number[block[s]];

  std::vector<std::string> names;
  std::vector<State> next;
  std::vector<Letter> out;
  for (const State r : representative) {
    names.push_back(automaton.state_name(r));
    for (Letter x = 0; x < nx; ++x) {
      next.push_back(class_of[automaton.next(r, x)]);
      out.push_back(automaton.out(r, x));
    }
  }
  std::optional<State> identity;
  if (automaton.identity()) identity = class_of[*automaton.identity()];
  return {MealyAutomaton(automaton.alphabet(), std::move(names), std::move(next), std::move(out),
                         identity),
          std::move(class_of)};
}

MealyAutomaton minimize(const MealyAutomaton& automaton) {
  return minimize_with_map(automaton).automaton;
}

Letter encode_block(std::span<const Letter> block, std::size_t num_letters) {
  Letter code = 0;
  for (const Letter x : block) code = static_cast<Letter>(code * num_letters + x);
  return code;
}

LetterWord decode_block(Letter code, std::size_t num_letters, std::size_t k) {
  LetterWord block(k);
  for (std::size_t i = k; i-- > 0;) {
    block[i] = static_cast<Letter>(code % num_letters);
    code = static_cast<Letter>(code / num_letters);
  }
  return block;
}

MealyAutomaton alphabet_power(const MealyAutomaton& automaton, std::size_t k) {
  if (k == 0) throw Error("alphabet power must be positive");
  if (k == 1) return automaton;
  const std::size_t nx = automaton.num_letters();
  const std::size_t ns = automaton.num_states();
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= nx;

  bool single_char = true;
  for (const auto& name : automaton.alphabet()) single_char = single_char && name.size() == 1;

  std::vector<std::string> alphabet(size);
  for (Letter code = 0; code < size; ++code) {
    const LetterWord block = decode_block(code, nx, k);
    std::string name;
    for (std::size_t i = 0; i < k; ++i) {
      if (i && !single_char) name += ',';
      name += automaton.letter_name(block[i]);
    }
    alphabet[code] = std::move(name);
  }
  std::vector<State> next(ns * size);
  std::vector<Letter> out(ns * size);
  LetterWord image(k);
  for (State s = 0; s < ns; ++s) {
    for (Letter code = 0; code < size; ++code) {
      const LetterWord block = decode_block(code, nx, k);
      State q = s;
      for (std::size_t i = 0; i < k; ++i) {
        image[i] = automaton.out(q, block[i]);
        q = automaton.next(q, block[i]);
      }
      next[s * size + code] = q;
      out[s * size + code] = encode_block(image, nx);
    }
  }
  return MealyAutomaton(std::move(alphabet), automaton.state_names(), std::move(next),
                        std::move(out), automaton.identity());
}

namespace {

void check_states(const MealyAutomaton& automaton, std::span<const State> w) {
  for (const State s : w) {
    if (s >= automaton.num_states()) throw UnknownLetter("#" + std::to_string(s));
  }
}

void check_letters(const MealyAutomaton& automaton, std::span<const Letter> v) {
  for (const Letter x : v) {
    if (x >= automaton.num_letters()) throw UnknownLetter("#" + std::to_string(x));
  }
}

}  // namespace

Permutation perm_of_word(const MealyAutomaton& automaton, std::span<const State> w) {
  check_states(automaton, w);
  std::vector<Letter> image(automaton.num_letters());
  for (Letter x = 0; x < image.size(); ++x) {
    Letter y = x;
    for (const State s : w) y = automaton.out(s, y);
    image[x] = y;
  }
  return Permutation(std::move(image));
}

Letter section_step(const MealyAutomaton& automaton, std::span<const State> w, Letter x,
                    Word& out) {
  out.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = automaton.next(w[i], x);
    x = automaton.out(w[i], x);
  }
  return x;
}

Word section_of_word(const MealyAutomaton& automaton, std::span<const State> w,
                     std::span<const Letter> x) {
  check_states(automaton, w);
  check_letters(automaton, x);
  Word current(w.begin(), w.end());
  Word scratch;
  for (const Letter letter : x) {
    section_step(automaton, current, letter, scratch);
    current.swap(scratch);
  }
  return current;
}

LetterWord apply(const MealyAutomaton& automaton, std::span<const State> w,
                 std::span<const Letter> v) {
  check_states(automaton, w);
  check_letters(automaton, v);
  LetterWord result(v.begin(), v.end());
  for (const State s : w) {
    State q = s;
    for (auto& letter : result) {
      const Letter x = letter;
      letter = automaton.out(q, x);
      q = automaton.next(q, x);
    }
  }
  return result;
}

Word word_from_names(const MealyAutomaton& automaton, std::span<const std::string> names) {
  Word w;
  w.reserve(names.size());
  for (const auto& name : names) {
    const auto s = automaton.find_state(name);
    if (!s) throw UnknownLetter(name);
    w.push_back(*s);
  }
  return w;
}

LetterWord letters_from_names(const MealyAutomaton& automaton,
                              std::span<const std::string> names) {
  LetterWord v;
  v.reserve(names.size());
  for (const auto& name : names) {
    const auto x = automaton.find_letter(name);
    if (!x) throw UnknownLetter(name);
    v.push_back(*x);
  }
  return v;
}

LetterWord letters_from_string(const MealyAutomaton& automaton, std::string_view text) {
  LetterWord v;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const auto x = automaton.find_letter(std::string_view(&c, 1));
    if (!x) throw UnknownLetter(std::string(1, c));
    v.push_back(*x);
  }
  return v;
}

std::string format_letters(const MealyAutomaton& automaton, std::span<const Letter> v) {
  std::string result;
  for (const Letter x : v) result += automaton.letter_name(x);
  return result;
}

}  // namespace autgroup
