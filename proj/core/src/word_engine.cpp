#include "autgroup/word_engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace autgroup {

namespace detail {

FixedWordIndex::FixedWordIndex(std::size_t length) : length_(length), slots_(64, 0) {}

std::size_t FixedWordIndex::hash(std::span<const State> w) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const State s : w) {
    h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void FixedWordIndex::grow() {
  std::vector<std::uint32_t> slots(slots_.size() * 2, 0);
  const std::size_t mask = slots.size() - 1;
  for (std::size_t id = 0; id < count_; ++id) {
    std::size_t slot = hash(word(id)) & mask;
    while (slots[slot] != 0) slot = (slot + 1) & mask;
    slots[slot] = static_cast<std::uint32_t>(id + 1);
  }
  slots_.swap(slots);
}

std::optional<std::uint32_t> FixedWordIndex::find(std::span<const State> w) const {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t slot = hash(w) & mask; slots_[slot] != 0; slot = (slot + 1) & mask) {
    const std::uint32_t id = slots_[slot] - 1;
    if (std::equal(w.begin(), w.end(), arena_.begin() + id * length_)) return id;
  }
  return std::nullopt;
}

std::pair<std::uint32_t, bool> FixedWordIndex::insert(std::span<const State> w) {
  if (const auto id = find(w)) return {*id, false};
  if (2 * (count_ + 1) > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t slot = hash(w) & mask;
  while (slots_[slot] != 0) slot = (slot + 1) & mask;
  const auto id = static_cast<std::uint32_t>(count_++);
  slots_[slot] = id + 1;
  arena_.insert(arena_.end(), w.begin(), w.end());
  return {id, true};
}

std::size_t WordHash::operator()(const std::vector<std::uint32_t>& w) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ w.size();
  for (const auto s : w) {
    h ^= s;
    h *= 0x100000001b3ULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace detail

bool SectionTable::trivial_permutation(std::size_t node) const {
  for (Letter x = 0; x < num_letters_; ++x) {
    if (image(node, x) != x) return false;
  }
  return true;
}

namespace {

// Shared BFS. Visits nodes in insertion order; `visit` returns false to stop.
template <typename Visit>
void explore_sections(const MealyAutomaton& automaton, std::span<const State> w, std::size_t budget,
                      detail::FixedWordIndex& index, Visit&& visit) {
  const std::size_t nx = automaton.num_letters();
  index.insert(w);
  Word current;
  Word section;
  std::vector<std::uint32_t> successors(nx);
  std::vector<Letter> images(nx);
  for (std::size_t node = 0; node < index.size(); ++node) {
    const auto stored = index.word(node);
    current.assign(stored.begin(), stored.end());
    for (Letter x = 0; x < nx; ++x) {
      images[x] = section_step(automaton, current, x, section);
      const auto [id, inserted] = index.insert(section);
      if (inserted && index.size() > budget) throw BudgetExceeded("section closure", budget);
      successors[x] = id;
    }
    if (!visit(node, successors, images)) return;
  }
}

}  // namespace

SectionTable sections_closure(const MealyAutomaton& automaton, std::span<const State> w,
                              std::size_t budget) {
  SectionTable table(w.size(), automaton.num_letters());
  explore_sections(automaton, w, budget, table.index_,
                   [&](std::size_t, const std::vector<std::uint32_t>& successors,
                       const std::vector<Letter>& images) {
                     table.successors_.insert(table.successors_.end(), successors.begin(),
                                              successors.end());
                     table.images_.insert(table.images_.end(), images.begin(), images.end());
                     return true;
                   });
  return table;
}

bool is_identity_oracle(const MealyAutomaton& automaton, std::span<const State> w,
                        std::size_t budget) {
  std::size_t visited = 0;
  return is_identity_oracle(automaton, w, budget, visited);
}

bool is_identity_oracle(const MealyAutomaton& automaton, std::span<const State> w,
                        std::size_t budget, std::size_t& visited) {
  for (const State s : w) {
    if (s >= automaton.num_states()) throw UnknownLetter(std::to_string(s));
  }
  detail::FixedWordIndex index(w.size());
  bool trivial = true;
  explore_sections(automaton, w, budget, index,
                   [&](std::size_t node, const std::vector<std::uint32_t>&,
                       const std::vector<Letter>& images) {
                     visited = node + 1;
                     for (Letter x = 0; x < images.size(); ++x) {
                       if (images[x] != x) {
                         trivial = false;
                         return false;
                       }
                     }
                     return true;
                   });
  return trivial;
}

bool are_equal(const AutomatonGroup& group, std::span<const State> u, std::span<const State> v,
               std::size_t budget) {
  Word w(u.begin(), u.end());
  const Word inv = group.inverse_word(v);
  w.insert(w.end(), inv.begin(), inv.end());
  return is_identity_oracle(group.automaton(), group.reduce(w), budget);
}

CanonicalKey canonical_key(const MealyAutomaton& automaton, std::span<const State> w,
                           std::size_t budget) {
  const SectionTable table = sections_closure(automaton, w, budget);
  const std::size_t n = table.size();
  const std::size_t nx = table.num_letters();

  std::vector<std::uint32_t> block(n);
  std::size_t count = 0;
  {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::WordHash> ids;
    std::vector<std::uint32_t> row(nx);
    for (std::size_t i = 0; i < n; ++i) {
      for (Letter x = 0; x < nx; ++x) row[x] = table.image(i, x);
      block[i] = ids.try_emplace(row, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    count = ids.size();
  }
  for (;;) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::WordHash> ids;
    std::vector<std::uint32_t> refined(n);
    std::vector<std::uint32_t> signature(nx + 1);
    for (std::size_t i = 0; i < n; ++i) {
      signature[0] = block[i];
      for (Letter x = 0; x < nx; ++x) signature[x + 1] = block[table.successor(i, x)];
      refined[i] = ids.try_emplace(signature, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    block.swap(refined);
    if (ids.size() == count) break;
    count = ids.size();
  }

  // Breadth-first numbering of classes from the root section.
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> number(count, kUnset);
  std::vector<std::size_t> member;  // a node of each numbered class
  number[block[0]] = 0;
  member.push_back(0);
  for (std::size_t i = 0; i < member.size(); ++i) {
    for (Letter x = 0; x < nx; ++x) {
      const std::uint32_t b = block[table.successor(member[i], x)];
      if (number[b] == kUnset) {
        number[b] = static_cast<std::uint32_t>(member.size());
        member.push_back(table.successor(member[i], x));
      }
    }
  }
  CanonicalKey key;
  key.reserve(2 + member.size() * 2 * nx);
  key.push_back(static_cast<std::uint32_t>(nx));
  key.push_back(static_cast<std::uint32_t>(member.size()));
  for (const std::size_t node : member) {
    for (Letter x = 0; x < nx; ++x) {
      key.push_back(table.image(node, x));
      key.push_back(number[block[table.successor(node, x)]]);
    }
  }
  return key;
}

Ball::Ball(const AutomatonGroup& group, std::size_t radius, std::size_t budget)
    : group_(&group), radius_(radius), budget_(budget) {
  const MealyAutomaton& automaton = group.automaton();
  lengths_.push_back(0);
  offsets_.push_back(0);
  offsets_.push_back(0);
  keys_.emplace(canonical_key(automaton, Word{}, budget), 0);
  spheres_.push_back(1);

  std::size_t level_begin = 0;
  Word candidate;
  for (std::size_t level = 1; level <= radius; ++level) {
    const std::size_t level_end = lengths_.size();
    std::uint64_t sphere = 0;
    for (std::size_t element = level_begin; element < level_end; ++element) {
      for (const State s : group.generators()) {
        candidate.assign(arena_.begin() + static_cast<std::ptrdiff_t>(offsets_[element]),
                         arena_.begin() + static_cast<std::ptrdiff_t>(offsets_[element + 1]));
        candidate.push_back(s);
        if (group.reduce(candidate).size() < level) continue;
        auto key = canonical_key(automaton, candidate, budget);
        if (keys_.try_emplace(std::move(key), static_cast<std::uint32_t>(lengths_.size())).second) {
          lengths_.push_back(static_cast<std::uint32_t>(level));
          arena_.insert(arena_.end(), candidate.begin(), candidate.end());
          offsets_.push_back(arena_.size());
          ++sphere;
        }
      }
    }
    spheres_.push_back(sphere);
    level_begin = level_end;
    if (sphere == 0) {
      // Finite group exhausted: every further sphere is empty.
      for (std::size_t rest = level + 1; rest <= radius; ++rest) spheres_.push_back(0);
      break;
    }
  }
}

Word Ball::representative(std::size_t element) const {
  return Word(arena_.begin() + static_cast<std::ptrdiff_t>(offsets_[element]),
              arena_.begin() + static_cast<std::ptrdiff_t>(offsets_[element + 1]));
}

std::optional<std::size_t> Ball::find(const CanonicalKey& key) const {
  const auto it = keys_.find(key);
  if (it == keys_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Ball::locate(std::span<const State> w) const {
  const Word reduced = group_->reduce(w);
  if (reduced.empty()) return 0;
  return find(canonical_key(group_->automaton(), reduced, budget_));
}

std::optional<std::uint32_t> LengthOracle::element(std::span<const State> w) {
  Word reduced = ball_->group().reduce(w);
  if (reduced.empty()) return 0;
  if (const auto it = cache_.find(reduced); it != cache_.end()) {
    if (it->second < 0) return std::nullopt;
    return static_cast<std::uint32_t>(it->second);
  }
  const auto found = ball_->locate(reduced);
  cache_.emplace(std::move(reduced), found ? static_cast<std::int64_t>(*found) : -1);
  if (!found) return std::nullopt;
  return static_cast<std::uint32_t>(*found);
}

std::optional<std::size_t> LengthOracle::length(std::span<const State> w) {
  const auto e = element(w);
  if (!e) return std::nullopt;
  return ball_->length(*e);
}

std::optional<Word> LengthOracle::shortest(std::span<const State> w) {
  const auto e = element(w);
  if (!e) return std::nullopt;
  return ball_->representative(*e);
}

std::size_t word_length(const AutomatonGroup& group, std::span<const State> w, std::size_t radius,
                        std::size_t budget) {
  const Ball ball(group, radius, budget);
  const auto element = ball.locate(w);
  if (!element) throw NotInBall(radius);
  return ball.length(*element);
}

GrowthTable growth(const AutomatonGroup& group, std::size_t radius, std::size_t budget) {
  const Ball ball(group, radius, budget);
  GrowthTable table;
  table.radius = radius;
  table.generating_set = group.format_word(group.generators(), ",");
  std::uint64_t total = 0;
  for (std::size_t n = 0; n <= radius; ++n) {
    total += ball.sphere(n);
    table.values.push_back(total);
  }
  return table;
}

std::string growth_csv(const GrowthTable& table) {
  std::ostringstream out;
  out << "n,gamma\n";
  for (std::size_t n = 0; n < table.values.size(); ++n) out << n << ',' << table.values[n] << '\n';
  return out.str();
}

}  // namespace autgroup
