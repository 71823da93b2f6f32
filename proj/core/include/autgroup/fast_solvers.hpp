#pragma once

// Stage machines for the word problem in contracting, bounded and
// polynomial automaton groups, with elementary-step accounting.
//
// A tape holds v_1 # v_2 # ... # v_m; the input is accepted iff every v_i is
// trivial. One stage: (2) decide and drop segments shorter than L, (3)
// reject on a nontrivial permutation of X^k, (4) replace each segment by its
// sections M_x(v_i) for every x in X^k, (5) concatenate the x-tapes with
// separators. One elementary step is one symbol read or written on any tape.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "autgroup/automaton.hpp"
#include "autgroup/contraction.hpp"
#include "autgroup/group.hpp"
#include "autgroup/step_report.hpp"
#include "autgroup/word_engine.hpp"

namespace autgroup {

/// Tape separator symbol.
inline constexpr State kSeparator = std::numeric_limits<State>::max();

/// A word over S and '#' with the segment view v_1 # ... # v_m.
class TapeWord {
 public:
  TapeWord() = default;
  explicit TapeWord(std::vector<State> symbols) : symbols_(std::move(symbols)) {}

  /// Drops leading, trailing and repeated separators.
  void normalize();
  std::vector<Word> segments() const;
  const std::vector<State>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<State> symbols_;
};

struct SolverOptions {
  std::size_t budget = kDefaultSectionBudget;
  /// Overrides the default stage limit when nonzero.
  std::size_t stage_limit = 0;
};

/// M_x on one segment: blocks of L non-identity letters are replaced by
/// certificate entries, the tail (< L letters) by its direct section.
/// `power_automaton` must be alphabet_power(group.automaton(), k).
Word mx_step(const AutomatonGroup& group, const MealyAutomaton& power_automaton,
             const ContractionCertificate& certificate, Letter x, std::span<const State> w);
Word mx_step(const AutomatonGroup& group, const ContractionCertificate& certificate, Letter x,
             std::span<const State> w);

/// Reusable stage machine; keeps its memo of short-segment verdicts across
/// runs. Not thread-safe.
class StageMachine {
 public:
  struct Config {
    std::string name;
    const ContractionCertificate* certificate = nullptr;
    std::size_t power = 1;
    /// Segments with fewer non-identity letters are decided directly.
    std::size_t short_length = 1;
    bool strip_identity = false;
    bool reset_rule = false;
    enum class Guard { contracting, item2, polynomial } guard = Guard::contracting;
    std::size_t degree = 0;
    SolverOptions options;
  };

  StageMachine(const AutomatonGroup& group, Config config);

  StepReport run(std::span<const State> input);
  std::size_t stage_limit(std::size_t n) const;
  const Config& config() const { return config_; }
  /// Number of certificate lookups performed so far.
  std::uint64_t table_reads() const { return table_reads_; }

 private:
  bool short_segment_trivial(std::span<const State> content);
  void apply_mx(Letter x, std::span<const State> content, Word& out);

  const AutomatonGroup* group_;
  Config config_;
  MealyAutomaton power_automaton_;
  std::unordered_map<Word, bool, detail::WordHash> short_memo_;
  std::uint64_t table_reads_ = 0;
};

/// Uses the certificate's M_x; identity letters left in tail sections are
/// skipped when read.
StageMachine contracting_machine(const AutomatonGroup& group,
                                 const ContractionCertificate& certificate,
                                 const SolverOptions& options = {});
/// As contracting, but every M_x output is stripped of the identity letter.
StageMachine bounded_machine(const AutomatonGroup& group, const ContractionCertificate& certificate,
                             const SolverOptions& options = {});
/// Reset rule on loopified sections: v = w|_x without e; v == w gives the
/// empty word. With a certificate its M_x is used for v.
StageMachine polynomial_machine(const AutomatonGroup& group, std::size_t degree,
                                const ContractionCertificate* certificate = nullptr,
                                const SolverOptions& options = {});

StepReport solve_contracting(const AutomatonGroup& group, const ContractionCertificate& certificate,
                             std::span<const State> input, const SolverOptions& options = {});
StepReport solve_bounded(const AutomatonGroup& group, const ContractionCertificate& certificate,
                         std::span<const State> input, const SolverOptions& options = {});
StepReport solve_polynomial(const AutomatonGroup& group, std::size_t degree,
                            std::span<const State> input,
                            const ContractionCertificate* certificate = nullptr,
                            const SolverOptions& options = {});
/// Exhaustive-section oracle wrapped as a report (steps = sections visited
/// times word length).
StepReport solve_oracle(const AutomatonGroup& group, std::span<const State> input,
                        const SolverOptions& options = {});

struct AutoPlan {
  std::string method;
  std::unique_ptr<ContractionCertificate> certificate;
  ActivityClass activity;
};

/// Picks a solver: a contraction certificate within (max_block, max_power)
/// if one exists (bounded machine for bounded automata), else the
/// polynomial machine for polynomial automata, else the oracle.
AutoPlan plan_auto(const AutomatonGroup& group, std::size_t max_block = 6,
                   std::size_t max_power = 2);
StepReport solve_auto(const AutomatonGroup& group, std::span<const State> input,
                      const SolverOptions& options = {});
StepReport solve_with_plan(const AutomatonGroup& group, const AutoPlan& plan,
                           std::span<const State> input, const SolverOptions& options = {});

}  // namespace autgroup
