#pragma once

// Word problem in groups with an expanding endomorphism phi: check that the
// word lies in H = phi(G), rewrite it into a word for phi^-1(w) of the same
// length with half as many non-identity letters, repeat.
//
// Built-in instances, in integer coordinates:
//   z4    Z,   phi(x) = 4x
//   z2    Z^2, phi(x, y) = (4x, 4y)
//   heis  Heisenberg group, (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2),
//         phi(x, y, z) = (4x, 4y, 16z); a = (1,0,0), b = (0,1,0), c = (0,0,1)
//         and [a, b] = a b a^-1 b^-1 = c.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/errors.hpp"
#include "autgroup/step_report.hpp"
#include "autgroup/word_syntax.hpp"

namespace autgroup {

enum class InstanceKind { z4, z2x4, heisenberg };

InstanceKind parse_instance_kind(std::string_view name);
std::string_view to_string(InstanceKind kind);

/// Group element in the instance's coordinates; unused trailing entries are 0.
using Coordinates = std::array<std::int64_t, 3>;

/// Multiplication law, inverse, phi and cosets of H = phi(G) for one kind.
class CoordinateGroup {
 public:
  explicit CoordinateGroup(InstanceKind kind) : kind_(kind) {}

  InstanceKind kind() const { return kind_; }
  std::size_t dimension() const;
  Coordinates multiply(const Coordinates& g, const Coordinates& h) const;
  Coordinates inverse(const Coordinates& g) const;
  Coordinates phi(const Coordinates& g) const;
  /// phi^-1(h) for h in H; nullopt otherwise.
  std::optional<Coordinates> phi_inverse(const Coordinates& h) const;
  /// Representative r of the right coset H g, with g = h r, h in H.
  Coordinates coset_representative(const Coordinates& g) const;
  /// All coset representatives, identity first.
  std::vector<Coordinates> coset_representatives() const;
  Coordinates evaluate(std::span<const Coordinates> letters) const;

 private:
  InstanceKind kind_;
};

using NilLetter = std::uint16_t;
using NilWord = std::vector<NilLetter>;

class NilpotentInstance {
 public:
  static constexpr NilLetter kMissing = 0xFFFF;

  struct Rewrite {
    NilLetter c;       // kMissing when phi^-1(x a b y^-1) is not in N
    std::uint16_t y;   // coset index
  };

  /// Builds the tables for a given letter set N (identity should come first).
  /// Entries whose c falls outside N are stored as kMissing.
  NilpotentInstance(InstanceKind kind, std::vector<Coordinates> letters);

  const CoordinateGroup& group() const { return group_; }
  std::string_view name() const { return to_string(group_.kind()); }
  std::size_t num_letters() const { return letters_.size(); }
  std::size_t num_cosets() const { return cosets_.size(); }
  const std::vector<Coordinates>& letters() const { return letters_; }
  const std::vector<Coordinates>& cosets() const { return cosets_; }
  const Coordinates& letter(NilLetter a) const { return letters_[a]; }
  std::optional<NilLetter> find_letter(const Coordinates& g) const;
  NilLetter identity() const { return identity_; }
  NilLetter inverse(NilLetter a) const { return inverse_[a]; }

  const Rewrite& rewrite(NilLetter a, NilLetter b, std::uint16_t x) const {
    return table_[(static_cast<std::size_t>(a) * letters_.size() + b) * cosets_.size() + x];
  }
  std::uint16_t coset_step(std::uint16_t x, NilLetter a) const {
    return action_[static_cast<std::size_t>(x) * letters_.size() + a];
  }

  /// Input names: e, a/A, b/B (z2, heis) and c/C (heis).
  const WordSyntax& syntax() const { return syntax_; }
  NilWord parse_word(std::string_view text) const;
  std::string format_word(std::span<const NilLetter> w) const;
  /// Product of the letters in coordinates.
  Coordinates evaluate(std::span<const NilLetter> w) const;
  bool is_trivial(std::span<const NilLetter> w) const;

 private:
  CoordinateGroup group_;
  std::vector<Coordinates> letters_;
  std::vector<Coordinates> cosets_;
  NilLetter identity_ = kMissing;
  std::vector<NilLetter> inverse_;
  std::vector<Rewrite> table_;
  std::vector<std::uint16_t> action_;
  WordSyntax syntax_;
};

/// Built-in instance with a letter set closed under the rewrite rule.
/// Heisenberg grows N from the generators until closed (bounded retries).
/// Throws ClosureFailure.
NilpotentInstance build_instance(InstanceKind kind);

struct ClosureWitness {
  NilLetter a;
  NilLetter b;
  std::uint16_t x;
  Coordinates c;
};

struct ClosureReport {
  bool passed = true;
  std::size_t entries_checked = 0;
  std::vector<ClosureWitness> failures;
};

/// Every (a, b, x) must give c = phi^-1(x a b y^-1) in N with
/// phi(c) y = x a b, and the stored entry must agree.
ClosureReport verify_table_closure(const NilpotentInstance& instance);

/// Left-to-right fold of the coset action; returns the coset index of H w.
std::uint16_t coset_scan(const NilpotentInstance& instance, std::span<const NilLetter> w);

/// One rewriting pass: consecutive non-identity letters a, b become e, c.
/// A trailing unpaired letter is paired with a virtual e. Requires w in H.
NilWord halve(const NilpotentInstance& instance, std::span<const NilLetter> w);

StepReport solve_nilpotent(const NilpotentInstance& instance, std::span<const NilLetter> w,
                           std::size_t stage_limit = 0);

}  // namespace autgroup
