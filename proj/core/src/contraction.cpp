#include "autgroup/contraction.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace autgroup {

std::string_view to_string(ContractionMode mode) {
  switch (mode) {
    case ContractionMode::item1:
      return "item1";
    case ContractionMode::item2:
      return "item2";
    case ContractionMode::item3:
      return "item3";
  }
  return "?";
}

ContractionMode parse_mode(std::string_view text) {
  if (text == "item1") return ContractionMode::item1;
  if (text == "item2") return ContractionMode::item2;
  if (text == "item3") return ContractionMode::item3;
  throw ParseError("unknown contraction mode '" + std::string(text) + "'");
}

BlockIndexer::BlockIndexer(const AutomatonGroup& group, std::size_t block_length)
    : generators_(group.generators()),
      position_(group.automaton().num_states(), -1),
      block_length_(block_length),
      count_(1) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    position_[generators_[i]] = static_cast<std::int64_t>(i);
  }
  for (std::size_t i = 0; i < block_length; ++i) {
    if (!generators_.empty() &&
        count_ > std::numeric_limits<std::uint64_t>::max() / generators_.size()) {
      throw BudgetExceeded("block enumeration", std::numeric_limits<std::uint64_t>::max());
    }
    count_ *= generators_.size();
  }
}

std::optional<std::uint64_t> BlockIndexer::index(std::span<const State> w) const {
  if (w.size() != block_length_) return std::nullopt;
  std::uint64_t result = 0;
  for (const State s : w) {
    const std::int64_t digit = position_[s];
    if (digit < 0) return std::nullopt;
    result = result * generators_.size() + static_cast<std::uint64_t>(digit);
  }
  return result;
}

void BlockIndexer::decode(std::uint64_t index, Word& out) const {
  out.resize(block_length_);
  for (std::size_t i = block_length_; i-- > 0;) {
    out[i] = generators_[index % generators_.size()];
    index /= generators_.size();
  }
}

namespace {

struct Evaluation {
  bool passed = true;
  std::size_t max_length = 0;
  std::size_t sum = 0;
};

Evaluation evaluate(const MealyAutomaton& power_automaton, LengthOracle& oracle,
                    std::span<const State> w, ContractionMode mode, Word& scratch) {
  const std::size_t block_length = w.size();
  Evaluation result;
  for (Letter x = 0; x < power_automaton.num_letters(); ++x) {
    section_step(power_automaton, w, x, scratch);
    const std::size_t length = oracle.length(scratch).value_or(block_length + 1);
    result.max_length = std::max(result.max_length, length);
    result.sum += length;
    if (mode == ContractionMode::item1 && length >= block_length) result.passed = false;
    if (mode == ContractionMode::item2 && result.sum > block_length) result.passed = false;
    if (mode == ContractionMode::item3 && result.sum >= block_length) result.passed = false;
    if (!result.passed) break;
  }
  return result;
}

std::size_t worker_count(const CheckOptions& options) {
  if (options.threads) return options.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

CheckResult check_item(const Ball& ball, std::size_t block_length, std::size_t power,
                       ContractionMode mode, const CheckOptions& options) {
  if (block_length == 0 || power == 0) throw Error("check_item needs L >= 1 and k >= 1");
  if (ball.radius() < block_length) throw Error("ball radius is smaller than the block length");
  const AutomatonGroup& group = ball.group();
  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), power);
  const BlockIndexer indexer(group, block_length);

  CheckResult result;
  std::mutex merge;
  auto absorb = [&](const Evaluation& e) {
    result.max_section_length = std::max(result.max_section_length, e.max_length);
    result.max_section_sum = std::max(result.max_section_sum, e.sum);
  };

  if (indexer.count() == 0) return result;

  if (options.sample) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, indexer.count() - 1);
    LengthOracle oracle(ball);
    Word w;
    Word scratch;
    std::optional<std::uint64_t> worst;
    for (std::size_t i = 0; i < *options.sample; ++i) {
      const std::uint64_t index = pick(rng);
      indexer.decode(index, w);
      const Evaluation e = evaluate(power_automaton, oracle, w, mode, scratch);
      absorb(e);
      ++result.words_checked;
      if (!e.passed && (!worst || index < *worst)) worst = index;
    }
    if (worst) {
      result.passed = false;
      indexer.decode(*worst, w);
      result.witness = w;
    }
    return result;
  }

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (indexer.count() + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> first_failure{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> checked{0};
  std::exception_ptr error;

  auto work = [&] {
    try {
      LengthOracle oracle(ball);
      Word w;
      Word scratch;
      Evaluation local;
      for (;;) {
        const std::uint64_t chunk = next_chunk.fetch_add(1);
        if (chunk >= chunks) break;
        const std::uint64_t begin = chunk * kChunk;
        if (begin > first_failure.load()) break;
        const std::uint64_t end = std::min(indexer.count(), begin + kChunk);
        for (std::uint64_t index = begin; index < end; ++index) {
          indexer.decode(index, w);
          const Evaluation e = evaluate(power_automaton, oracle, w, mode, scratch);
          local.max_length = std::max(local.max_length, e.max_length);
          local.sum = std::max(local.sum, e.sum);
          checked.fetch_add(1, std::memory_order_relaxed);
          if (!e.passed) {
            std::uint64_t seen = first_failure.load();
            while (index < seen && !first_failure.compare_exchange_weak(seen, index)) {
            }
            break;
          }
        }
      }
      std::lock_guard lock(merge);
      absorb(local);
    } catch (...) {
      std::lock_guard lock(merge);
      if (!error) error = std::current_exception();
      next_chunk.store(chunks);
    }
  };

  const std::size_t workers = std::min<std::uint64_t>(worker_count(options), chunks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  result.words_checked = checked.load();
  if (first_failure.load() != std::numeric_limits<std::uint64_t>::max()) {
    result.passed = false;
    Word w;
    indexer.decode(first_failure.load(), w);
    result.witness = std::move(w);
  }
  return result;
}

CheckResult check_item(const AutomatonGroup& group, std::size_t block_length, std::size_t power,
                       ContractionMode mode, const CheckOptions& options) {
  const Ball ball(group, block_length, options.budget);
  return check_item(ball, block_length, power, mode, options);
}

ContractionCertificate::ContractionCertificate(const AutomatonGroup& group, ContractionMode mode,
                                               std::size_t block_length, std::size_t power,
                                               Rational lambda, std::vector<std::uint64_t> offsets,
                                               std::vector<State> arena)
    : mode_(mode),
      power_(power),
      alphabet_size_(1),
      lambda_(lambda),
      indexer_(group, block_length),
      offsets_(std::move(offsets)),
      arena_(std::move(arena)) {
  for (std::size_t i = 0; i < power; ++i) alphabet_size_ *= group.num_letters();
  if (offsets_.size() != indexer_.count() * alphabet_size_ + 1) {
    throw CertificateMismatch("certificate table does not cover S^L x X^k");
  }
}

std::span<const State> ContractionCertificate::entry(std::uint64_t block, Letter x) const {
  const std::uint64_t cell = block * alphabet_size_ + x;
  return {arena_.data() + offsets_[cell], static_cast<std::size_t>(offsets_[cell + 1] - offsets_[cell])};
}

std::span<const State> ContractionCertificate::entry(std::span<const State> block, Letter x) const {
  const auto index = indexer_.index(block);
  if (!index || x >= alphabet_size_) throw CertificateMismatch("no certificate entry for block");
  return entry(*index, x);
}

namespace {

Rational reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return g ? Rational{num / g, den / g} : Rational{0, 1};
}

constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 28;

ContractionCertificate materialize(const Ball& ball, std::size_t block_length, std::size_t power,
                                   ContractionMode mode) {
  const AutomatonGroup& group = ball.group();
  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), power);
  const BlockIndexer indexer(group, block_length);
  const std::size_t nxk = power_automaton.num_letters();
  if (indexer.count() > kMaxTableEntries / nxk) {
    throw BudgetExceeded("certificate table", kMaxTableEntries);
  }

  LengthOracle oracle(ball);
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(indexer.count() * nxk + 1);
  std::vector<State> arena;
  std::size_t longest = 0;
  Word w;
  Word section;
  for (std::uint64_t index = 0; index < indexer.count(); ++index) {
    indexer.decode(index, w);
    std::size_t sum = 0;
    for (Letter x = 0; x < nxk; ++x) {
      section_step(power_automaton, w, x, section);
      const auto shortest = oracle.shortest(section);
      if (!shortest || (mode == ContractionMode::item1 && shortest->size() >= block_length)) {
        throw CertificateMismatch("item fails at " + group.format_word(w, ""));
      }
      sum += shortest->size();
      longest = std::max(longest, shortest->size());
      arena.insert(arena.end(), shortest->begin(), shortest->end());
      offsets.push_back(arena.size());
    }
    if ((mode == ContractionMode::item2 && sum > block_length) ||
        (mode == ContractionMode::item3 && sum >= block_length)) {
      throw CertificateMismatch("item fails at " + group.format_word(w, ""));
    }
  }
  return ContractionCertificate(group, mode, block_length, power, reduced(longest, block_length),
                                std::move(offsets), std::move(arena));
}

}  // namespace

ContractionCertificate build_certificate(const AutomatonGroup& group, std::size_t block_length,
                                         std::size_t power, ContractionMode mode,
                                         const CheckOptions& options) {
  const Ball ball(group, block_length, options.budget);
  return materialize(ball, block_length, power, mode);
}

ContractionCertificate find_certificate(const AutomatonGroup& group, std::size_t max_block,
                                        std::size_t max_power, const CheckOptions& options) {
  if (max_block == 0 || max_power == 0) throw NotFound(max_block, max_power);
  const Ball ball(group, max_block, options.budget);
  for (const ContractionMode mode :
       {ContractionMode::item3, ContractionMode::item1, ContractionMode::item2}) {
    for (std::size_t power = 1; power <= max_power; ++power) {
      for (std::size_t block = 1; block <= max_block; ++block) {
        CheckOptions full = options;
        full.sample.reset();
        if (check_item(ball, block, power, mode, full).passed) {
          return materialize(ball, block, power, mode);
        }
      }
    }
  }
  throw NotFound(max_block, max_power);
}

bool verify_certificate(const AutomatonGroup& group, const ContractionCertificate& certificate,
                        std::size_t budget) {
  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), certificate.power());
  const BlockIndexer& indexer = certificate.indexer();
  const std::size_t block_length = certificate.block_length();
  Word w;
  Word section;
  for (std::uint64_t index = 0; index < indexer.count(); ++index) {
    indexer.decode(index, w);
    std::size_t sum = 0;
    for (Letter x = 0; x < certificate.alphabet_size(); ++x) {
      const auto entry = certificate.entry(index, x);
      section_step(power_automaton, w, x, section);
      if (!are_equal(group, entry, section, budget)) return false;
      if (certificate.mode() == ContractionMode::item1 && entry.size() >= block_length) return false;
      sum += entry.size();
    }
    if (certificate.mode() == ContractionMode::item2 && sum > block_length) return false;
    if (certificate.mode() == ContractionMode::item3 && sum >= block_length) return false;
  }
  return true;
}

namespace {

std::string dotted(const AutomatonGroup& group, std::span<const State> w) {
  return w.empty() ? std::string("-") : group.format_word(w, ".");
}

Word undotted(const AutomatonGroup& group, const std::string& text) {
  if (text == "-") return {};
  Word w;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find('.', begin), text.size());
    const std::string name = text.substr(begin, end - begin);
    const auto s = group.automaton().find_state(name);
    if (!s) throw UnknownLetter(name);
    w.push_back(*s);
    begin = end + 1;
  }
  return w;
}

}  // namespace

std::string serialize(const AutomatonGroup& group, const ContractionCertificate& certificate) {
  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), certificate.power());
  std::ostringstream out;
  const Rational lambda = certificate.lambda_prime();
  out << to_string(certificate.mode()) << ' ' << certificate.block_length() << ' '
      << certificate.power() << ' ' << lambda.num << '/' << lambda.den << '\n';
  Word w;
  for (std::uint64_t index = 0; index < certificate.indexer().count(); ++index) {
    certificate.indexer().decode(index, w);
    for (Letter x = 0; x < certificate.alphabet_size(); ++x) {
      out << "sect: " << dotted(group, w) << ' ' << power_automaton.letter_name(x) << " -> "
          << dotted(group, certificate.entry(index, x)) << '\n';
    }
  }
  return out.str();
}

ContractionCertificate parse_certificate(const AutomatonGroup& group, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty certificate");
  std::istringstream header(line);
  std::string mode_text;
  std::size_t block_length = 0;
  std::size_t power = 0;
  std::string lambda_text;
  if (!(header >> mode_text >> block_length >> power >> lambda_text)) {
    throw ParseError("certificate header must be 'mode L k num/den'");
  }
  const auto slash = lambda_text.find('/');
  if (slash == std::string::npos) throw ParseError("lambda must be num/den");
  const Rational lambda{std::stoull(lambda_text.substr(0, slash)),
                        std::stoull(lambda_text.substr(slash + 1))};
  const ContractionMode mode = parse_mode(mode_text);

  const MealyAutomaton power_automaton = alphabet_power(group.automaton(), power);
  const BlockIndexer indexer(group, block_length);
  const std::size_t nxk = power_automaton.num_letters();
  if (indexer.count() > kMaxTableEntries / nxk) {
    throw BudgetExceeded("certificate table", kMaxTableEntries);
  }
  std::vector<std::optional<Word>> cells(indexer.count() * nxk);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag, block_text, letter_text, arrow, entry_text;
    if (!(fields >> tag >> block_text >> letter_text >> arrow >> entry_text) || tag != "sect:" ||
        arrow != "->") {
      throw ParseError("bad certificate line '" + line + "'");
    }
    const auto index = indexer.index(undotted(group, block_text));
    if (!index) throw CertificateMismatch("block '" + block_text + "' is not in S^L");
    const auto x = power_automaton.find_letter(letter_text);
    if (!x) throw UnknownLetter(letter_text);
    auto& cell = cells[*index * nxk + *x];
    if (cell) throw ParseError("duplicate certificate entry for " + block_text + " " + letter_text);
    cell = undotted(group, entry_text);
  }
  std::vector<std::uint64_t> offsets{0};
  std::vector<State> arena;
  for (const auto& cell : cells) {
    if (!cell) throw CertificateMismatch("certificate table is incomplete");
    arena.insert(arena.end(), cell->begin(), cell->end());
    offsets.push_back(arena.size());
  }
  return ContractionCertificate(group, mode, block_length, power, lambda, std::move(offsets),
                                std::move(arena));
}

std::string ActivityClass::describe() const {
  switch (kind) {
    case Kind::bounded:
      return "Bounded(" + std::to_string(bound) + ")";
    case Kind::polynomial:
      return "Polynomial(" + std::to_string(degree) + ")";
    case Kind::exponential:
      return "Exponential";
  }
  return "?";
}

std::uint64_t activity_count(const MealyAutomaton& automaton, State s, std::size_t n) {
  const Minimization minimal = minimize_with_map(automaton);
  const MealyAutomaton& m = minimal.automaton;
  const State identity = m.require_identity();
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

  std::vector<std::uint64_t> counts(m.num_states(), 0);
  counts[minimal.class_of.at(s)] = 1;
  std::vector<std::uint64_t> next(m.num_states());
  for (std::size_t level = 0; level < n; ++level) {
    std::fill(next.begin(), next.end(), 0);
    for (State q = 0; q < m.num_states(); ++q) {
      if (counts[q] == 0 || q == identity) continue;
      for (Letter x = 0; x < m.num_letters(); ++x) {
        auto& slot = next[m.next(q, x)];
        slot = slot > kMax - counts[q] ? kMax : slot + counts[q];
      }
    }
    counts.swap(next);
  }
  std::uint64_t total = 0;
  for (State q = 0; q < m.num_states(); ++q) {
    if (q != identity) total = total > kMax - counts[q] ? kMax : total + counts[q];
  }
  return total;
}

namespace {

struct CycleStructure {
  std::vector<std::size_t> component;     // per state, SIZE_MAX for identity
  std::vector<std::vector<State>> members;
  std::vector<bool> cyclic;
  bool disjoint = true;
};

CycleStructure analyze_cycles(const MealyAutomaton& m, State identity) {
  const std::size_t ns = m.num_states();
  // Reachability through nontrivial states, including the empty path.
  std::vector<std::vector<bool>> reach(ns, std::vector<bool>(ns, false));
  for (State s = 0; s < ns; ++s) {
    if (s == identity) continue;
    reach[s][s] = true;
    for (Letter x = 0; x < m.num_letters(); ++x) {
      if (m.next(s, x) != identity) reach[s][m.next(s, x)] = true;
    }
  }
  for (State k = 0; k < ns; ++k) {
    for (State i = 0; i < ns; ++i) {
      if (!reach[i][k]) continue;
      for (State j = 0; j < ns; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  CycleStructure result;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  result.component.assign(ns, kNone);
  for (State s = 0; s < ns; ++s) {
    if (s == identity || result.component[s] != kNone) continue;
    const std::size_t c = result.members.size();
    result.members.emplace_back();
    for (State t = s; t < ns; ++t) {
      if (t != identity && reach[s][t] && reach[t][s]) {
        result.component[t] = c;
        result.members[c].push_back(t);
      }
    }
  }
  result.cyclic.assign(result.members.size(), false);
  for (std::size_t c = 0; c < result.members.size(); ++c) {
    for (const State s : result.members[c]) {
      std::size_t internal = 0;
      for (Letter x = 0; x < m.num_letters(); ++x) {
        if (m.next(s, x) != identity && result.component[m.next(s, x)] == c) ++internal;
      }
      if (internal > 0) result.cyclic[c] = true;
      if (internal > 1) result.disjoint = false;
    }
  }
  return result;
}

}  // namespace

std::vector<std::size_t> simple_cycle_lengths(const MealyAutomaton& automaton) {
  const MealyAutomaton m = minimize(automaton);
  const CycleStructure cycles = analyze_cycles(m, m.require_identity());
  if (!cycles.disjoint) throw Error("simple cycles at nontrivial states are not disjoint");
  std::vector<std::size_t> lengths;
  for (std::size_t c = 0; c < cycles.members.size(); ++c) {
    if (cycles.cyclic[c]) lengths.push_back(cycles.members[c].size());
  }
  return lengths;
}

ActivityClass classify_activity(const MealyAutomaton& automaton) {
  const MealyAutomaton m = minimize(automaton);
  const State identity = m.require_identity();
  const CycleStructure cycles = analyze_cycles(m, identity);
  if (!cycles.disjoint) return {ActivityClass::Kind::exponential, 0, 0};

  // Longest chain of cycles along a path: DP over components in reverse
  // topological order (memoized DFS; the component graph is acyclic).
  const std::size_t nc = cycles.members.size();
  std::vector<std::vector<std::size_t>> successors(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const State s : cycles.members[c]) {
      for (Letter x = 0; x < m.num_letters(); ++x) {
        const State t = m.next(s, x);
        if (t != identity && cycles.component[t] != c) successors[c].push_back(cycles.component[t]);
      }
    }
  }
  std::vector<std::int64_t> best(nc, -1);
  auto chain = [&](auto&& self, std::size_t c) -> std::size_t {
    if (best[c] >= 0) return static_cast<std::size_t>(best[c]);
    std::size_t longest = 0;
    for (const std::size_t d : successors[c]) longest = std::max(longest, self(self, d));
    best[c] = static_cast<std::int64_t>(longest + (cycles.cyclic[c] ? 1 : 0));
    return static_cast<std::size_t>(best[c]);
  };
  std::size_t max_cycles = 0;
  for (std::size_t c = 0; c < nc; ++c) max_cycles = std::max(max_cycles, chain(chain, c));

  if (max_cycles >= 2) return {ActivityClass::Kind::polynomial, 0, max_cycles - 1};

  std::size_t period = 1;
  for (std::size_t c = 0; c < nc; ++c) {
    if (cycles.cyclic[c]) period = std::lcm(period, cycles.members[c].size());
  }
  const std::size_t horizon = m.num_states() * period;
  std::uint64_t bound = 0;
  for (State s = 0; s < m.num_states(); ++s) {
    if (s == identity) continue;
    for (std::size_t n = 0; n <= horizon; ++n) bound = std::max(bound, activity_count(m, s, n));
  }
  return {ActivityClass::Kind::bounded, bound, 0};
}

Loopified loopify(const MealyAutomaton& automaton) {
  const MealyAutomaton m = minimize(automaton);
  std::size_t power = 1;
  for (const std::size_t length : simple_cycle_lengths(m)) power = std::lcm(power, length);
  return {alphabet_power(m, power), power};
}

}  // namespace autgroup
