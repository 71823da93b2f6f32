#include "autgroup/fast_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace autgroup {

void TapeWord::normalize() {
  std::vector<State> result;
  result.reserve(symbols_.size());
  for (const State s : symbols_) {
    if (s == kSeparator && (result.empty() || result.back() == kSeparator)) continue;
    result.push_back(s);
  }
  if (!result.empty() && result.back() == kSeparator) result.pop_back();
  symbols_.swap(result);
}

std::vector<Word> TapeWord::segments() const {
  std::vector<Word> result(1);
  for (const State s : symbols_) {
    if (s == kSeparator) {
      result.emplace_back();
    } else {
      result.back().push_back(s);
    }
  }
  if (symbols_.empty()) result.clear();
  return result;
}

namespace {

// Non-identity content of a tape segment.
void segment_content(std::span<const State> segment, State identity, Word& out) {
  out.clear();
  for (const State s : segment) {
    if (s != identity) out.push_back(s);
  }
}

template <typename Fn>
void for_each_segment(const std::vector<State>& tape, Fn&& fn) {
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= tape.size(); ++i) {
    if (i == tape.size() || tape[i] == kSeparator) {
      if (i > begin || i < tape.size()) {
        fn(std::span<const State>(tape.data() + begin, i - begin));
      }
      begin = i + 1;
    }
  }
}

}  // namespace

Word mx_step(const AutomatonGroup& group, const MealyAutomaton& power_automaton,
             const ContractionCertificate& certificate, Letter x, std::span<const State> w) {
  const std::size_t block_length = certificate.block_length();
  Word content;
  segment_content(w, group.identity(), content);
  Word result;
  std::size_t pos = 0;
  for (; pos + block_length <= content.size(); pos += block_length) {
    const std::span<const State> block(content.data() + pos, block_length);
    const auto entry = certificate.entry(block, x);
    result.insert(result.end(), entry.begin(), entry.end());
    for (const State s : block) x = power_automaton.out(s, x);
  }
  Word tail;
  section_step(power_automaton, std::span<const State>(content.data() + pos, content.size() - pos), x,
               tail);
  result.insert(result.end(), tail.begin(), tail.end());
  return result;
}

Word mx_step(const AutomatonGroup& group, const ContractionCertificate& certificate, Letter x,
             std::span<const State> w) {
  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), certificate.power());
  return mx_step(group, power_automaton, certificate, x, w);
}

StageMachine::StageMachine(const AutomatonGroup& group, Config config)
    : group_(&group),
      config_(std::move(config)),
      power_automaton_(alphabet_power(group.automaton(), config_.power)) {
  if (config_.certificate && config_.certificate->power() != config_.power) {
    throw CertificateMismatch("certificate alphabet power differs from the machine's");
  }
}

std::size_t StageMachine::stage_limit(std::size_t n) const {
  if (config_.options.stage_limit) return config_.options.stage_limit;
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  switch (config_.guard) {
    case Config::Guard::contracting: {
      const double lambda = config_.certificate ? config_.certificate->lambda() : 0.5;
      return static_cast<std::size_t>(std::ceil(log_n / std::log2(1.0 / lambda))) + 3;
    }
    case Config::Guard::item2:
      return static_cast<std::size_t>(std::ceil(4.0 * (log_n + 1.0) * (log_n + 1.0)));
    case Config::Guard::polynomial:
      return static_cast<std::size_t>(
                 std::ceil(8.0 * std::pow(log_n + 2.0, static_cast<double>(config_.degree + 1)))) +
             8;
  }
  return 0;
}

bool StageMachine::short_segment_trivial(std::span<const State> content) {
  if (content.empty()) return true;
  Word key(content.begin(), content.end());
  if (const auto it = short_memo_.find(key); it != short_memo_.end()) return it->second;
  const bool trivial = is_identity_oracle(group_->automaton(), content, config_.options.budget);
  short_memo_.emplace(std::move(key), trivial);
  return trivial;
}

void StageMachine::apply_mx(Letter x, std::span<const State> content, Word& out) {
  out.clear();
  if (config_.certificate) {
    const std::size_t block_length = config_.certificate->block_length();
    std::size_t pos = 0;
    for (; pos + block_length <= content.size(); pos += block_length) {
      const std::span<const State> block(content.data() + pos, block_length);
      const auto entry = config_.certificate->entry(block, x);
      ++table_reads_;
      out.insert(out.end(), entry.begin(), entry.end());
      for (const State s : block) x = power_automaton_.out(s, x);
    }
    for (; pos < content.size(); ++pos) {
      out.push_back(power_automaton_.next(content[pos], x));
      x = power_automaton_.out(content[pos], x);
    }
  } else {
    for (const State s : content) {
      out.push_back(power_automaton_.next(s, x));
      x = power_automaton_.out(s, x);
    }
  }
  if (config_.strip_identity) {
    std::erase(out, group_->identity());
  }
  if (config_.reset_rule && std::equal(out.begin(), out.end(), content.begin(), content.end())) {
    out.clear();
  }
}

StepReport StageMachine::run(std::span<const State> input) {
  StepReport report;
  report.solver = config_.name;
  report.input_length = input.size();
  const std::size_t limit = stage_limit(input.size());
  const State identity = group_->identity();
  const std::size_t nxk = power_automaton_.num_letters();

  std::vector<State> tape(input.begin(), input.end());
  std::vector<State> scratch;
  std::vector<Word> x_tapes(nxk);
  Word content;
  Word image;
  std::vector<Letter> perm(nxk);

  for (;;) {
    // (1)
    if (tape.empty()) {
      report.accepted = true;
      return report;
    }
    if (report.stages >= limit) {
      if (config_.guard == Config::Guard::polynomial) throw StageGuardExceeded(limit);
      throw NonTermination(limit);
    }
    ++report.stages;
    report.tape_lengths.push_back(tape.size());
    std::size_t longest = 0;
    for_each_segment(tape, [&](std::span<const State> segment) {
      segment_content(segment, identity, content);
      longest = std::max(longest, content.size());
    });
    report.max_segment.push_back(longest);

    // (2) decide and drop short segments.
    report.steps += tape.size();
    scratch.clear();
    bool rejected = false;
    for_each_segment(tape, [&](std::span<const State> segment) {
      if (rejected) return;
      segment_content(segment, identity, content);
      if (content.size() < config_.short_length) {
        if (!short_segment_trivial(content)) rejected = true;
        return;
      }
      if (!scratch.empty()) scratch.push_back(kSeparator);
      scratch.insert(scratch.end(), segment.begin(), segment.end());
    });
    if (rejected) return report;
    report.steps += scratch.size();
    tape.swap(scratch);
    if (tape.empty()) continue;

    // (3) permutations of X^k.
    report.steps += tape.size();
    for_each_segment(tape, [&](std::span<const State> segment) {
      if (rejected) return;
      std::iota(perm.begin(), perm.end(), Letter{0});
      for (const State s : segment) {
        for (auto& y : perm) y = power_automaton_.out(s, y);
      }
      for (Letter x = 0; x < nxk; ++x) {
        if (perm[x] != x) {
          rejected = true;
          return;
        }
      }
    });
    if (rejected) return report;

    // (4) M_x for every x, one read pass.
    report.steps += tape.size();
    for (auto& x_tape : x_tapes) x_tape.clear();
    bool first = true;
    for_each_segment(tape, [&](std::span<const State> segment) {
      segment_content(segment, identity, content);
      for (Letter x = 0; x < nxk; ++x) {
        if (!first) x_tapes[x].push_back(kSeparator);
        apply_mx(x, content, image);
        x_tapes[x].insert(x_tapes[x].end(), image.begin(), image.end());
      }
      first = false;
    });
    std::size_t written = 0;
    for (const auto& x_tape : x_tapes) written += x_tape.size();
    report.steps += written;

    // (5) concatenate, squeezing repeated separators.
    report.steps += written;
    tape.clear();
    for (const auto& x_tape : x_tapes) {
      for (const State s : x_tape) {
        if (s == kSeparator && (tape.empty() || tape.back() == kSeparator)) continue;
        tape.push_back(s);
      }
      if (!tape.empty() && tape.back() != kSeparator) tape.push_back(kSeparator);
    }
    if (!tape.empty() && tape.back() == kSeparator) tape.pop_back();
    report.steps += tape.size();
  }
}

namespace {

StageMachine::Config::Guard guard_for(const ContractionCertificate& certificate) {
  return certificate.mode() == ContractionMode::item2 ? StageMachine::Config::Guard::item2
                                                      : StageMachine::Config::Guard::contracting;
}

}  // namespace

StageMachine contracting_machine(const AutomatonGroup& group,
                                 const ContractionCertificate& certificate,
                                 const SolverOptions& options) {
  StageMachine::Config config;
  config.name = "contracting";
  config.certificate = &certificate;
  config.power = certificate.power();
  config.short_length = certificate.block_length();
  config.guard = guard_for(certificate);
  config.options = options;
  return StageMachine(group, std::move(config));
}

StageMachine bounded_machine(const AutomatonGroup& group, const ContractionCertificate& certificate,
                             const SolverOptions& options) {
  StageMachine::Config config;
  config.name = "bounded";
  config.certificate = &certificate;
  config.power = certificate.power();
  config.short_length = certificate.block_length();
  config.strip_identity = true;
  config.guard = guard_for(certificate);
  config.options = options;
  return StageMachine(group, std::move(config));
}

StageMachine polynomial_machine(const AutomatonGroup& group, std::size_t degree,
                                const ContractionCertificate* certificate,
                                const SolverOptions& options) {
  std::size_t loop_power = 1;
  for (const std::size_t length : simple_cycle_lengths(group.automaton())) {
    loop_power = std::lcm(loop_power, length);
  }
  StageMachine::Config config;
  config.name = "polynomial";
  config.strip_identity = true;
  config.reset_rule = true;
  config.degree = degree;
  config.options = options;
  config.power = loop_power;
  config.guard = StageMachine::Config::Guard::polynomial;
  if (certificate) {
    if (certificate->power() % loop_power != 0) {
      throw CertificateMismatch("certificate alphabet power is not a multiple of the loop power " +
                                std::to_string(loop_power));
    }
    config.certificate = certificate;
    config.power = certificate->power();
    config.short_length = certificate->block_length();
  }
  return StageMachine(group, std::move(config));
}

StepReport solve_contracting(const AutomatonGroup& group, const ContractionCertificate& certificate,
                             std::span<const State> input, const SolverOptions& options) {
  return contracting_machine(group, certificate, options).run(input);
}

StepReport solve_bounded(const AutomatonGroup& group, const ContractionCertificate& certificate,
                         std::span<const State> input, const SolverOptions& options) {
  return bounded_machine(group, certificate, options).run(input);
}

StepReport solve_polynomial(const AutomatonGroup& group, std::size_t degree,
                            std::span<const State> input,
                            const ContractionCertificate* certificate,
                            const SolverOptions& options) {
  return polynomial_machine(group, degree, certificate, options).run(input);
}

StepReport solve_oracle(const AutomatonGroup& group, std::span<const State> input,
                        const SolverOptions& options) {
  StepReport report;
  report.solver = "oracle";
  report.input_length = input.size();
  std::size_t visited = 0;
  report.accepted = is_identity_oracle(group.automaton(), input, options.budget, visited);
  report.stages = 1;
  report.tape_lengths.push_back(input.size());
  report.max_segment.push_back(group.strip_identity(input).size());
  report.steps = static_cast<std::uint64_t>(visited) * input.size() * group.num_letters();
  return report;
}

AutoPlan plan_auto(const AutomatonGroup& group, std::size_t max_block, std::size_t max_power) {
  AutoPlan plan;
  plan.activity = classify_activity(group.automaton());
  try {
    plan.certificate = std::make_unique<ContractionCertificate>(
        find_certificate(group, max_block, max_power));
    plan.method = plan.activity.kind == ActivityClass::Kind::bounded ? "bounded" : "contracting";
    return plan;
  } catch (const NotFound&) {
  } catch (const BudgetExceeded&) {
  }
  plan.method = plan.activity.kind == ActivityClass::Kind::exponential ? "oracle" : "polynomial";
  return plan;
}

StepReport solve_with_plan(const AutomatonGroup& group, const AutoPlan& plan,
                           std::span<const State> input, const SolverOptions& options) {
  if (plan.method == "bounded") return solve_bounded(group, *plan.certificate, input, options);
  if (plan.method == "contracting") return solve_contracting(group, *plan.certificate, input, options);
  if (plan.method == "polynomial") {
    return solve_polynomial(group, plan.activity.degree, input, nullptr, options);
  }
  return solve_oracle(group, input, options);
}

StepReport solve_auto(const AutomatonGroup& group, std::span<const State> input,
                      const SolverOptions& options) {
  const AutoPlan plan = plan_auto(group);
  return solve_with_plan(group, plan, input, options);
}

}  // namespace autgroup
