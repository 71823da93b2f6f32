#include "autgroup/nilpotent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "autgroup/errors.hpp"

namespace autgroup {

namespace {

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

constexpr Coordinates kIdentity{0, 0, 0};

}  // namespace

InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "z4" || name == "Z4") return InstanceKind::z4;
  if (name == "z2" || name == "z2x4" || name == "Z2x4") return InstanceKind::z2x4;
  if (name == "heis" || name == "heisenberg" || name == "Heisenberg") {
    return InstanceKind::heisenberg;
  }
  throw ParseError("unknown group instance '" + std::string(name) + "' (expected z4, z2 or heis)");
}

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::z4:
      return "z4";
    case InstanceKind::z2x4:
      return "z2";
    case InstanceKind::heisenberg:
      return "heis";
  }
  return "?";
}

std::size_t CoordinateGroup::dimension() const {
  switch (kind_) {
    case InstanceKind::z4:
      return 1;
    case InstanceKind::z2x4:
      return 2;
    case InstanceKind::heisenberg:
      return 3;
  }
  return 0;
}

Coordinates CoordinateGroup::multiply(const Coordinates& g, const Coordinates& h) const {
  Coordinates result{g[0] + h[0], g[1] + h[1], g[2] + h[2]};
  if (kind_ == InstanceKind::heisenberg) result[2] += g[0] * h[1];
  return result;
}

Coordinates CoordinateGroup::inverse(const Coordinates& g) const {
  Coordinates result{-g[0], -g[1], -g[2]};
  if (kind_ == InstanceKind::heisenberg) result[2] = g[0] * g[1] - g[2];
  return result;
}

Coordinates CoordinateGroup::phi(const Coordinates& g) const {
  if (kind_ == InstanceKind::heisenberg) return {4 * g[0], 4 * g[1], 16 * g[2]};
  return {4 * g[0], 4 * g[1], 4 * g[2]};
}

std::optional<Coordinates> CoordinateGroup::phi_inverse(const Coordinates& h) const {
  const std::int64_t last = kind_ == InstanceKind::heisenberg ? 16 : 4;
  if (floor_mod(h[0], 4) || floor_mod(h[1], 4) || floor_mod(h[2], last)) return std::nullopt;
  return Coordinates{h[0] / 4, h[1] / 4, h[2] / last};
}

Coordinates CoordinateGroup::coset_representative(const Coordinates& g) const {
  if (kind_ != InstanceKind::heisenberg) {
    return {floor_mod(g[0], 4), floor_mod(g[1], 4), floor_mod(g[2], 4)};
  }
  // g = (4p, 4q, 16s) (r1, r2, r3) = (4p + r1, 4q + r2, 16s + r3 + 4p r2).
  const std::int64_t r1 = floor_mod(g[0], 4);
  const std::int64_t r2 = floor_mod(g[1], 4);
  const std::int64_t p = (g[0] - r1) / 4;
  return {r1, r2, floor_mod(g[2] - 4 * p * r2, 16)};
}

std::vector<Coordinates> CoordinateGroup::coset_representatives() const {
  std::vector<Coordinates> reps;
  switch (kind_) {
    case InstanceKind::z4:
      for (std::int64_t i = 0; i < 4; ++i) reps.push_back({i, 0, 0});
      break;
    case InstanceKind::z2x4:
      for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = 0; j < 4; ++j) reps.push_back({i, j, 0});
      break;
    case InstanceKind::heisenberg:
      for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = 0; j < 4; ++j)
          for (std::int64_t k = 0; k < 16; ++k) reps.push_back({i, j, k});
      break;
  }
  return reps;
}

Coordinates CoordinateGroup::evaluate(std::span<const Coordinates> letters) const {
  Coordinates result = kIdentity;
  for (const auto& g : letters) result = multiply(result, g);
  return result;
}

NilpotentInstance::NilpotentInstance(InstanceKind kind, std::vector<Coordinates> letters)
    : group_(kind), letters_(std::move(letters)), cosets_(group_.coset_representatives()) {
  if (letters_.size() >= kMissing) throw ClosureFailure("letter set too large");
  std::map<Coordinates, NilLetter> letter_index;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    letter_index.emplace(letters_[i], static_cast<NilLetter>(i));
  }
  std::map<Coordinates, std::uint16_t> coset_index;
  for (std::size_t i = 0; i < cosets_.size(); ++i) {
    coset_index.emplace(cosets_[i], static_cast<std::uint16_t>(i));
  }
  auto lookup = [&](const Coordinates& g) {
    const auto it = letter_index.find(g);
    return it == letter_index.end() ? kMissing : it->second;
  };
  identity_ = lookup(kIdentity);
  for (const auto& g : letters_) inverse_.push_back(lookup(group_.inverse(g)));

  const std::size_t nl = letters_.size();
  const std::size_t nc = cosets_.size();
  action_.resize(nc * nl);
  for (std::size_t x = 0; x < nc; ++x) {
    for (std::size_t a = 0; a < nl; ++a) {
      action_[x * nl + a] =
          coset_index.at(group_.coset_representative(group_.multiply(cosets_[x], letters_[a])));
    }
  }
  table_.resize(nl * nl * nc);
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nl; ++b) {
      for (std::size_t x = 0; x < nc; ++x) {
        const Coordinates xab =
            group_.multiply(group_.multiply(cosets_[x], letters_[a]), letters_[b]);
        const Coordinates y = group_.coset_representative(xab);
        const Coordinates h = group_.multiply(xab, group_.inverse(y));
        const auto c = group_.phi_inverse(h);
        if (!c) throw ClosureFailure("coset representative does not land in phi(G)");
        table_[(a * nl + b) * nc + x] = {lookup(*c), coset_index.at(y)};
      }
    }
  }

  static constexpr std::array<std::pair<const char*, Coordinates>, 6> kNames{{
      {"a", {1, 0, 0}},
      {"b", {0, 1, 0}},
      {"c", {0, 0, 1}},
      {"A", {-1, 0, 0}},
      {"B", {0, -1, 0}},
      {"C", {0, 0, -1}},
  }};
  if (identity_ != kMissing) syntax_.names.emplace_back("e", identity_);
  const std::size_t dimension = group_.dimension();
  for (const auto& [name, coords] : kNames) {
    const bool in_dimension = (coords[1] == 0 || dimension >= 2) && (coords[2] == 0 || dimension >= 3);
    if (!in_dimension) continue;
    if (const NilLetter letter = lookup(coords); letter != kMissing) {
      syntax_.names.emplace_back(name, letter);
    }
  }
  syntax_.inverse = [inverse = inverse_](std::uint32_t a) -> std::uint32_t {
    if (inverse[a] == kMissing) throw ClosureFailure("letter has no inverse in N");
    return inverse[a];
  };
}

std::optional<NilLetter> NilpotentInstance::find_letter(const Coordinates& g) const {
  const auto it = std::find(letters_.begin(), letters_.end(), g);
  if (it == letters_.end()) return std::nullopt;
  return static_cast<NilLetter>(it - letters_.begin());
}

NilWord NilpotentInstance::parse_word(std::string_view text) const {
  const auto raw = autgroup::parse_word(text, syntax_);
  return NilWord(raw.begin(), raw.end());
}

std::string NilpotentInstance::format_word(std::span<const NilLetter> w) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    const auto& g = letters_.at(w[i]);
    out << '(' << g[0];
    for (std::size_t d = 1; d < group_.dimension(); ++d) out << ',' << g[d];
    out << ')';
  }
  return out.str();
}

Coordinates NilpotentInstance::evaluate(std::span<const NilLetter> w) const {
  Coordinates result = kIdentity;
  for (const NilLetter a : w) result = group_.multiply(result, letters_.at(a));
  return result;
}

bool NilpotentInstance::is_trivial(std::span<const NilLetter> w) const {
  return evaluate(w) == kIdentity;
}

namespace {

std::vector<Coordinates> generator_letters(InstanceKind kind) {
  std::vector<Coordinates> letters{kIdentity};
  switch (kind) {
    case InstanceKind::z4:
      for (std::int64_t j = 1; j <= 3; ++j) {
        letters.push_back({j, 0, 0});
        letters.push_back({-j, 0, 0});
      }
      break;
    case InstanceKind::z2x4:
      for (std::int64_t i = -3; i <= 3; ++i)
        for (std::int64_t j = -3; j <= 3; ++j)
          if (i || j) letters.push_back({i, j, 0});
      break;
    case InstanceKind::heisenberg:
      letters.insert(letters.end(), {Coordinates{1, 0, 0}, Coordinates{-1, 0, 0},
                                     Coordinates{0, 1, 0}, Coordinates{0, -1, 0},
                                     Coordinates{0, 0, 1}, Coordinates{0, 0, -1}});
      break;
  }
  return letters;
}

}  // namespace

NilpotentInstance build_instance(InstanceKind kind) {
  constexpr int kMaxRounds = 32;
  std::vector<Coordinates> letters = generator_letters(kind);
  for (int round = 0; round < kMaxRounds; ++round) {
    NilpotentInstance instance(kind, letters);
    const ClosureReport report = verify_table_closure(instance);
    if (report.passed) return instance;
    if (kind != InstanceKind::heisenberg) {
      throw ClosureFailure("built-in letter set of " + std::string(to_string(kind)) +
                           " is not closed under rewriting");
    }
    for (const auto& failure : report.failures) {
      for (const Coordinates& g : {failure.c, instance.group().inverse(failure.c)}) {
        if (std::find(letters.begin(), letters.end(), g) == letters.end()) letters.push_back(g);
      }
    }
  }
  throw ClosureFailure("letter set did not close after " + std::to_string(kMaxRounds) + " rounds");
}

ClosureReport verify_table_closure(const NilpotentInstance& instance) {
  ClosureReport report;
  const CoordinateGroup& group = instance.group();
  for (std::size_t a = 0; a < instance.num_letters(); ++a) {
    for (std::size_t b = 0; b < instance.num_letters(); ++b) {
      for (std::size_t x = 0; x < instance.num_cosets(); ++x) {
        ++report.entries_checked;
        const auto la = static_cast<NilLetter>(a);
        const auto lb = static_cast<NilLetter>(b);
        const auto lx = static_cast<std::uint16_t>(x);
        const Coordinates xab = group.multiply(
            group.multiply(instance.cosets()[x], instance.letter(la)), instance.letter(lb));
        const Coordinates y = group.coset_representative(xab);
        const Coordinates c = *group.phi_inverse(group.multiply(xab, group.inverse(y)));
        const auto& entry = instance.rewrite(la, lb, lx);
        const bool ok = entry.c != NilpotentInstance::kMissing && instance.letter(entry.c) == c &&
                        instance.cosets()[entry.y] == y &&
                        group.multiply(group.phi(instance.letter(entry.c)),
                                       instance.cosets()[entry.y]) == xab;
        if (!ok) {
          report.passed = false;
          report.failures.push_back({la, lb, lx, c});
        }
      }
    }
  }
  return report;
}

std::uint16_t coset_scan(const NilpotentInstance& instance, std::span<const NilLetter> w) {
  std::uint16_t x = 0;
  for (const NilLetter a : w) x = instance.coset_step(x, a);
  return x;
}

namespace {

// Returns the number of letters written.
std::size_t halve_in_place(const NilpotentInstance& instance, std::vector<NilLetter>& tape) {
  const NilLetter e = instance.identity();
  std::uint16_t x = 0;
  std::optional<std::size_t> pending;
  std::size_t written = 0;
  auto apply = [&](std::size_t first, NilLetter a, NilLetter b) {
    const auto& entry = instance.rewrite(a, b, x);
    if (entry.c == NilpotentInstance::kMissing) {
      throw ClosureFailure("rewrite table has no letter for this pair");
    }
    x = entry.y;
    return entry.c;
  };
  for (std::size_t i = 0; i < tape.size(); ++i) {
    if (tape[i] == e) continue;
    if (!pending) {
      pending = i;
      continue;
    }
    const NilLetter c = apply(*pending, tape[*pending], tape[i]);
    tape[*pending] = e;
    tape[i] = c;
    written += 2;
    pending.reset();
  }
  if (pending) {
    tape[*pending] = apply(*pending, tape[*pending], e);
    written += 1;
  }
  if (x != 0) throw Error("halve: word does not lie in phi(G)");
  return written;
}

}  // namespace

NilWord halve(const NilpotentInstance& instance, std::span<const NilLetter> w) {
  if (instance.identity() == NilpotentInstance::kMissing) throw Error("instance has no identity letter");
  if (coset_scan(instance, w) != 0) throw Error("halve: word does not lie in phi(G)");
  NilWord tape(w.begin(), w.end());
  halve_in_place(instance, tape);
  return tape;
}

StepReport solve_nilpotent(const NilpotentInstance& instance, std::span<const NilLetter> w,
                           std::size_t stage_limit) {
  for (const NilLetter a : w) {
    if (a >= instance.num_letters()) throw UnknownLetter(std::to_string(a));
  }
  StepReport report;
  report.solver = "nilpotent";
  report.input_length = w.size();
  const std::size_t n = w.size();
  const std::size_t limit =
      stage_limit ? stage_limit
                  : 2 * static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n) + 2))) + 8;
  const NilLetter e = instance.identity();
  std::vector<NilLetter> tape(w.begin(), w.end());
  for (;;) {
    // (1)
    report.steps += n;
    const auto nonidentity =
        static_cast<std::size_t>(std::count_if(tape.begin(), tape.end(), [&](NilLetter a) { return a != e; }));
    if (nonidentity == 0) {
      report.accepted = true;
      return report;
    }
    if (report.stages >= limit) throw NonTermination(limit);
    ++report.stages;
    report.tape_lengths.push_back(n);
    report.max_segment.push_back(nonidentity);
    // (2)
    report.steps += n;
    if (coset_scan(instance, tape) != 0) return report;
    // (3)
    report.steps += n;
    report.steps += halve_in_place(instance, tape);
  }
}

}  // namespace autgroup
