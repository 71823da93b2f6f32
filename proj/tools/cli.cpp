#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autgroup/bench.hpp"
#include "autgroup/builtin.hpp"
#include "autgroup/contraction.hpp"
#include "autgroup/fast_solvers.hpp"
#include "autgroup/nilpotent.hpp"
#include "autgroup/word_engine.hpp"

namespace autgroup::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// A path to an automaton file, or the name of a built-in.
MealyAutomaton load_automaton(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return parse_automaton(read_file(spec));
  if (builtin_text(spec)) return builtin_automaton(spec);
  throw Error("'" + spec + "' is neither a file nor a built-in automaton");
}

struct Options {
  std::string automaton;
  std::string group;
  std::string word;
  std::string word_file;
  std::string method = "auto";
  std::string report;
  std::string mode = "item3";
  std::string certificate_file;
  std::string output;
  std::string letters;
  std::string family;
  std::string input;
  std::vector<std::string> models;
  std::size_t block = 0;
  std::size_t power = 0;
  std::size_t radius = 6;
  std::size_t first = 4;
  std::size_t last = 10;
  std::size_t sample = 0;
  std::size_t threads = 0;
  std::size_t budget = kDefaultSectionBudget;
  std::uint64_t seed = 1;
  bool curve = false;
};

std::string input_word(const Options& options) {
  if (!options.word_file.empty()) return read_file(options.word_file);
  return options.word;
}

std::unique_ptr<ContractionCertificate> certificate_for(const AutomatonGroup& group,
                                                        const Options& options) {
  if (!options.certificate_file.empty()) {
    return std::make_unique<ContractionCertificate>(
        parse_certificate(group, read_file(options.certificate_file)));
  }
  if (options.block && options.power) {
    return std::make_unique<ContractionCertificate>(build_certificate(
        group, options.block, options.power, parse_mode(options.mode), {.budget = options.budget}));
  }
  return std::make_unique<ContractionCertificate>(find_certificate(
      group, options.block ? options.block : 6, options.power ? options.power : 2,
      {.budget = options.budget}));
}

void print_report(std::ostream& out, const StepReport& report, const std::string& format) {
  if (format == "json") {
    out << to_json(report) << '\n';
  } else if (format == "csv") {
    out << "solver,n,stages,steps,verdict\n"
        << report.solver << ',' << report.input_length << ',' << report.stages << ','
        << report.steps << ',' << (report.accepted ? "accept" : "reject") << '\n';
  } else {
    out << (report.accepted ? "accept" : "reject") << '\n';
  }
}

int run_solve(const Options& options, std::ostream& out) {
  const std::string text = input_word(options);
  SolverOptions solver_options{.budget = options.budget};
  StepReport report;
  if (!options.group.empty()) {
    if (options.method != "auto" && options.method != "nilpotent") {
      throw Error("instance groups support --method nilpotent only");
    }
    const NilpotentInstance instance = build_instance(parse_instance_kind(options.group));
    report = solve_nilpotent(instance, instance.parse_word(text));
  } else {
    if (options.automaton.empty()) throw Error("solve needs --automaton or --group");
    const AutomatonGroup group(load_automaton(options.automaton));
    const Word w = group.parse_word(text);
    if (options.method == "oracle") {
      report = solve_oracle(group, w, solver_options);
    } else if (options.method == "contracting") {
      report = solve_contracting(group, *certificate_for(group, options), w, solver_options);
    } else if (options.method == "bounded") {
      report = solve_bounded(group, *certificate_for(group, options), w, solver_options);
    } else if (options.method == "polynomial") {
      const ActivityClass activity = classify_activity(group.automaton());
      if (activity.kind == ActivityClass::Kind::exponential) {
        throw Error("automaton is not polynomial");
      }
      report = solve_polynomial(group, activity.degree, w, nullptr, solver_options);
    } else if (options.method == "auto") {
      report = solve_auto(group, w, solver_options);
    } else {
      throw Error("method '" + options.method + "' does not apply to automaton groups");
    }
  }
  print_report(out, report, options.report);
  return report.accepted ? kOk : kFailed;
}

int run_certify(const Options& options, std::ostream& out) {
  const AutomatonGroup group(load_automaton(options.automaton));
  const ContractionMode mode = parse_mode(options.mode);
  CheckOptions check{.threads = options.threads, .seed = options.seed, .budget = options.budget};
  if (options.sample) check.sample = options.sample;
  const CheckResult result = check_item(group, options.block, options.power, mode, check);
  out << (result.passed ? "pass" : "fail") << ' ' << to_string(mode) << " L=" << options.block
      << " k=" << options.power << " words=" << result.words_checked
      << " max_section=" << result.max_section_length << " max_sum=" << result.max_section_sum;
  if (result.witness) out << " witness=" << group.format_word(*result.witness, "");
  out << '\n';
  if (result.passed && !options.output.empty()) {
    const ContractionCertificate certificate =
        build_certificate(group, options.block, options.power, mode, check);
    std::ofstream file(options.output, std::ios::binary);
    file << serialize(group, certificate);
    if (!file) throw Error("cannot write '" + options.output + "'");
  }
  return result.passed ? kOk : kFailed;
}

int run_growth(const Options& options, std::ostream& out) {
  const AutomatonGroup group(load_automaton(options.automaton));
  const GrowthTable table = growth(group, options.radius, options.budget);
  if (options.curve) {
    out << curve_csv(lower_bound_curve(table, 0, options.radius));
  } else {
    out << growth_csv(table);
  }
  return kOk;
}

std::vector<ComplexityModel> selected_models(const Options& options) {
  if (options.models.empty()) return default_models();
  std::vector<ComplexityModel> models;
  for (const auto& name : options.models) models.push_back(model_by_name(name));
  return models;
}

void print_fit(std::ostream& out, const FitResult& fit) {
  out << "model,constant,residual\n";
  for (const auto& f : fit.fits) out << f.model << ',' << f.constant << ',' << f.residual << '\n';
  out << "winner," << fit.winner << ',' << fit.constant << '\n';
}

int run_bench_command(const Options& options, std::ostream& out) {
  const auto rows = run_bench(options.family, options.first, options.last, options.seed);
  if (options.report == "json") {
    out << bench_report_json(options.family, options.seed, rows,
                             fit_complexity(rows, selected_models(options)))
        << '\n';
  } else {
    out << "# family=" << options.family << " seed=" << options.seed << '\n' << bench_csv(rows);
  }
  return kOk;
}

std::vector<BenchRow> read_rows(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'm') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    BenchRow row;
    if (!(fields >> row.m >> row.n >> row.stages >> row.steps)) {
      throw ParseError("bad CSV row '" + line + "'");
    }
    rows.push_back(row);
  }
  return rows;
}

int run_fit(const Options& options, std::ostream& out) {
  std::vector<BenchRow> rows;
  if (options.input.empty() || options.input == "-") {
    rows = read_rows(std::cin);
  } else {
    std::istringstream in(read_file(options.input));
    rows = read_rows(in);
  }
  print_fit(out, fit_complexity(rows, selected_models(options)));
  return kOk;
}

// Exhaustive agreement between the oracle and the stage machines on short
// words, plus exhaustive halving on the Z4 instance.
int run_selftest(std::ostream& out) {
  bool ok = true;
  {
    const AutomatonGroup group(builtin_automaton("grigorchuk"));
    const ContractionCertificate certificate = build_certificate(group, 2, 1, ContractionMode::item1);
    StageMachine contracting = contracting_machine(group, certificate);
    StageMachine bounded = bounded_machine(group, certificate);
    const auto& generators = group.generators();
    std::size_t checked = 0;
    std::size_t disagreements = 0;
    for (std::size_t length = 0; length <= 6; ++length) {
      std::vector<std::size_t> digits(length, 0);
      for (;;) {
        Word w;
        for (const auto d : digits) w.push_back(generators[d]);
        const bool expected = is_identity_oracle(group.automaton(), w);
        if (contracting.run(w).accepted != expected || bounded.run(w).accepted != expected) {
          ++disagreements;
        }
        ++checked;
        std::size_t i = length;
        while (i > 0 && ++digits[i - 1] == generators.size()) digits[--i] = 0;
        if (i == 0) break;
      }
    }
    out << (disagreements ? "FAIL" : "ok") << " grigorchuk agreement, " << checked
        << " words of length <= 6\n";
    ok = ok && disagreements == 0;
  }
  {
    const NilpotentInstance instance = build_instance(InstanceKind::z4);
    std::size_t checked = 0;
    std::size_t failures = 0;
    for (std::size_t length = 0; length <= 6; ++length) {
      std::vector<NilLetter> w(length, 0);
      for (;;) {
        const Coordinates value = instance.evaluate(w);
        const StepReport report = solve_nilpotent(instance, w);
        if (report.accepted != (value[0] == 0)) ++failures;
        if (value[0] % 4 == 0) {
          const NilWord half = halve(instance, w);
          if (instance.evaluate(half)[0] * 4 != value[0]) ++failures;
        }
        ++checked;
        std::size_t i = length;
        while (i > 0 && ++w[i - 1] == instance.num_letters()) w[--i] = 0;
        if (i == 0) break;
      }
    }
    out << (failures ? "FAIL" : "ok") << " z4 halving, " << checked << " words of length <= 6\n";
    ok = ok && failures == 0;
  }
  for (const auto kind : {InstanceKind::z4, InstanceKind::z2x4, InstanceKind::heisenberg}) {
    const ClosureReport report = verify_table_closure(build_instance(kind));
    out << (report.passed ? "ok" : "FAIL") << ' ' << to_string(kind) << " table closure, "
        << report.entries_checked << " entries\n";
    ok = ok && report.passed;
  }
  return ok ? kOk : kFailed;
}

void add_automaton_option(CLI::App* command, Options& options, bool required = true) {
  auto* option = command->add_option("--automaton,-a", options.automaton,
                                     "automaton file or built-in name");
  if (required) option->required();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word problems in automaton groups and nilpotent instance groups", "autgroup"};
  app.require_subcommand(1);
  Options options;

  auto* validate = app.add_subcommand("validate", "parse and check an automaton");
  add_automaton_option(validate, options);

  auto* minimize_command = app.add_subcommand("minimize", "print the minimized automaton");
  add_automaton_option(minimize_command, options);

  auto* dual = app.add_subcommand("dual-section", "section w|_x of a word");
  add_automaton_option(dual, options);
  dual->add_option("word", options.word, "word over the states")->required();
  dual->add_option("--at,-x", options.letters, "word over the alphabet, e.g. 011")->required();

  auto* solve = app.add_subcommand("solve", "decide whether a word is trivial");
  add_automaton_option(solve, options, false);
  solve->add_option("--group,-g", options.group, "instance group: z4, z2 or heis");
  solve->add_option("word", options.word, "the word");
  solve->add_option("--file,-f", options.word_file, "read the word from a file");
  solve->add_option("--method,-m", options.method, "oracle|contracting|bounded|polynomial|nilpotent|auto")
      ->check(CLI::IsMember({"oracle", "contracting", "bounded", "polynomial", "nilpotent", "auto"}));
  solve->add_option("--report,-r", options.report, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--certificate", options.certificate_file, "certificate file");
  solve->add_option("-L", options.block, "block length of the certificate");
  solve->add_option("-k", options.power, "alphabet power of the certificate");
  solve->add_option("--mode", options.mode, "item1, item2 or item3");
  solve->add_option("--budget", options.budget, "section budget of the oracle");

  auto* certify = app.add_subcommand("certify", "check a contraction inequality over S^L x X^k");
  add_automaton_option(certify, options);
  certify->add_option("-L", options.block, "block length")->required()->check(CLI::PositiveNumber);
  certify->add_option("-k", options.power, "alphabet power")->required()->check(CLI::PositiveNumber);
  certify->add_option("--mode", options.mode, "item1, item2 or item3");
  certify->add_option("--sample", options.sample, "check this many random words only");
  certify->add_option("--seed", options.seed, "sampling seed");
  certify->add_option("--threads", options.threads, "worker threads, 0 = all cores");
  certify->add_option("--output,-o", options.output, "write the certificate table here");

  auto* classify = app.add_subcommand("classify", "bounded, polynomial or exponential activity");
  add_automaton_option(classify, options);

  auto* growth_command = app.add_subcommand("growth", "growth function as CSV n,gamma");
  add_automaton_option(growth_command, options);
  growth_command->add_option("-n,--radius", options.radius, "largest n");
  growth_command->add_flag("--curve", options.curve, "print n log2 gamma(n) instead");

  auto* bench = app.add_subcommand("bench", "step counts of a benchmark family");
  bench->add_option("family", options.family, "family name")->required();
  bench->add_option("--from", options.first, "first m");
  bench->add_option("--to", options.last, "last m");
  bench->add_option("--seed", options.seed, "seed of the random families");
  bench->add_option("--report,-r", options.report, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--models", options.models, "models to fit, comma separated")->delimiter(',');

  auto* fit = app.add_subcommand("fit", "fit complexity models to bench CSV");
  fit->add_option("input", options.input, "CSV file, - for stdin");
  fit->add_option("--models", options.models, "models to fit, comma separated")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "exhaustive small-scale agreement checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const bool is_solve = solve->parsed();
  try {
    if (validate->parsed()) {
      const MealyAutomaton automaton = load_automaton(options.automaton);
      out << "ok states=" << automaton.num_states() << " letters=" << automaton.num_letters();
      if (automaton.identity()) out << " identity=" << automaton.state_name(*automaton.identity());
      out << '\n';
      return kOk;
    }
    if (minimize_command->parsed()) {
      out << serialize(minimize(load_automaton(options.automaton)));
      return kOk;
    }
    if (dual->parsed()) {
      const AutomatonGroup group(load_automaton(options.automaton));
      const Word w = group.parse_word(options.word);
      const LetterWord x = letters_from_string(group.automaton(), options.letters);
      out << group.format_word(section_of_word(group.automaton(), w, x), "") << '\n';
      return kOk;
    }
    if (is_solve) return run_solve(options, out);
    if (certify->parsed()) return run_certify(options, out);
    if (classify->parsed()) {
      const AutomatonGroup group(load_automaton(options.automaton));
      const ActivityClass activity = classify_activity(group.automaton());
      out << activity.describe() << '\n';
      return kOk;
    }
    if (growth_command->parsed()) return run_growth(options, out);
    if (bench->parsed()) return run_bench_command(options, out);
    if (fit->parsed()) return run_fit(options, out);
    if (selftest->parsed()) return run_selftest(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace autgroup::cli
