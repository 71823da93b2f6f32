#include "autgroup/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include <json.hpp>

#include "autgroup/builtin.hpp"
#include "autgroup/contraction.hpp"
#include "autgroup/errors.hpp"
#include "autgroup/fast_solvers.hpp"
#include "autgroup/nilpotent.hpp"

namespace autgroup {

const std::vector<BenchFamily>& bench_families() {
  static const std::vector<BenchFamily> families{
      {"basilica", "basilica", "bounded", "(ab)^(2^m)"},
      {"poly1", "poly1", "polynomial", "(b a b a^-1)^(2^m)"},
      {"grigorchuk", "grigorchuk", "contracting", "(ab)^(2^m)"},
      {"z4", "z4", "nilpotent", "a^(2^m) A^(2^m)"},
      {"z2", "z2", "nilpotent", "a^(2^m) b^(2^m) A^(2^m) B^(2^m)"},
      {"heis", "heis", "nilpotent", "random u over e a A b B c C of length 2^(m-1), then u^-1"},
      {"z4-random", "z4", "nilpotent", "random u over N of length 2^(m-1), then u^-1"},
  };
  return families;
}

const BenchFamily& find_family(std::string_view name) {
  for (const auto& family : bench_families()) {
    if (family.name == name) return family;
  }
  throw Error("unknown bench family '" + std::string(name) + "'");
}

namespace {

std::string power_text(std::string_view base, std::size_t m) {
  return "(" + std::string(base) + ")^" + std::to_string(std::size_t{1} << m);
}

BenchRow make_row(std::size_t m, const StepReport& report) {
  return {m, report.input_length, report.stages, report.steps, report.accepted};
}

std::vector<BenchRow> run_automaton_family(const BenchFamily& family, std::size_t first,
                                           std::size_t last) {
  const AutomatonGroup group(builtin_automaton(family.target));
  std::unique_ptr<ContractionCertificate> certificate;
  std::unique_ptr<StageMachine> machine;
  std::string base;
  if (family.name == "basilica") {
    certificate = std::make_unique<ContractionCertificate>(find_certificate(group, 8, 2));
    machine = std::make_unique<StageMachine>(bounded_machine(group, *certificate));
    base = "ab";
  } else if (family.name == "grigorchuk") {
    certificate = std::make_unique<ContractionCertificate>(
        build_certificate(group, 2, 1, ContractionMode::item1));
    machine = std::make_unique<StageMachine>(contracting_machine(group, *certificate));
    base = "ab";
  } else {
    const ActivityClass activity = classify_activity(group.automaton());
    machine = std::make_unique<StageMachine>(polynomial_machine(group, activity.degree));
    base = "b a b a^-1";
  }
  std::vector<BenchRow> rows;
  for (std::size_t m = first; m <= last; ++m) {
    const Word w = group.parse_word(power_text(base, m));
    rows.push_back(make_row(m, machine->run(w)));
  }
  return rows;
}

std::vector<BenchRow> run_instance_family(const BenchFamily& family, std::size_t first,
                                          std::size_t last, std::uint64_t seed) {
  const NilpotentInstance instance = build_instance(parse_instance_kind(family.target));
  std::mt19937_64 rng(seed);
  std::vector<BenchRow> rows;
  for (std::size_t m = first; m <= last; ++m) {
    NilWord w;
    if (family.name == "z4") {
      const std::string count = std::to_string(std::size_t{1} << m);
      w = instance.parse_word("a^" + count + " A^" + count);
    } else if (family.name == "z2") {
      const std::string count = std::to_string(std::size_t{1} << m);
      w = instance.parse_word("a^" + count + " b^" + count + " A^" + count + " B^" + count);
    } else {
      std::vector<NilLetter> pool;
      if (family.name == "heis") {
        for (const auto& [name, letter] : instance.syntax().names) pool.push_back(static_cast<NilLetter>(letter));
      } else {
        for (std::size_t a = 0; a < instance.num_letters(); ++a) pool.push_back(static_cast<NilLetter>(a));
      }
      const std::size_t half = m == 0 ? 0 : std::size_t{1} << (m - 1);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (std::size_t i = 0; i < half; ++i) w.push_back(pool[pick(rng)]);
      for (std::size_t i = half; i-- > 0;) w.push_back(instance.inverse(w[i]));
    }
    rows.push_back(make_row(m, solve_nilpotent(instance, w)));
  }
  return rows;
}

}  // namespace

std::vector<BenchRow> run_bench(std::string_view name, std::size_t first, std::size_t last,
                                std::uint64_t seed) {
  const BenchFamily& family = find_family(name);
  if (first > last) return {};
  if (family.solver == "nilpotent") return run_instance_family(family, first, last, seed);
  return run_automaton_family(family, first, last);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "m,n,stages,steps\n";
  for (const auto& row : rows) {
    out << row.m << ',' << row.n << ',' << row.stages << ',' << row.steps << '\n';
  }
  return out.str();
}

double ComplexityModel::shape(double n) const {
  if (quadratic) return n * n;
  return n * std::pow(std::log2(n), static_cast<double>(log_power));
}

std::vector<ComplexityModel> default_models() {
  return {{"n", 0, false}, {"n log n", 1, false}, {"n log^2 n", 2, false}, {"n^2", 0, true}};
}

ComplexityModel model_by_name(std::string_view name) {
  if (name == "n^2") return {"n^2", 0, true};
  if (name == "n") return {"n", 0, false};
  if (name == "n log n") return {"n log n", 1, false};
  const std::string_view prefix = "n log^";
  const std::string_view suffix = " n";
  if (name.starts_with(prefix) && name.ends_with(suffix)) {
    const std::string digits(name.substr(prefix.size(), name.size() - prefix.size() - suffix.size()));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return {std::string(name), static_cast<unsigned>(std::stoul(digits)), false};
    }
  }
  throw ParseError("unknown complexity model '" + std::string(name) + "'");
}

const ModelFit& FitResult::fit(std::string_view model) const {
  for (const auto& f : fits) {
    if (f.model == model) return f;
  }
  throw Error("model '" + std::string(model) + "' was not fitted");
}

double FitResult::advantage() const {
  double best_other = std::numeric_limits<double>::infinity();
  double own = 0;
  for (const auto& f : fits) {
    if (f.model == winner) {
      own = f.residual;
    } else {
      best_other = std::min(best_other, f.residual);
    }
  }
  if (own <= 0) return std::numeric_limits<double>::infinity();
  return best_other / own;
}

FitResult fit_complexity(const std::vector<BenchRow>& rows,
                         const std::vector<ComplexityModel>& models) {
  std::vector<std::pair<double, double>> points;
  for (const auto& row : rows) {
    if (row.n >= 2 && row.steps > 0) {
      points.emplace_back(static_cast<double>(row.n), static_cast<double>(row.steps));
    }
  }
  if (points.empty()) throw Error("fit_complexity: no usable rows");
  FitResult result;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& model : models) {
    std::vector<double> diff;
    for (const auto& [n, steps] : points) diff.push_back(std::log2(steps) - std::log2(model.shape(n)));
    double mean = 0;
    for (const double d : diff) mean += d;
    mean /= static_cast<double>(diff.size());
    double residual = 0;
    for (const double d : diff) residual += (d - mean) * (d - mean);
    residual /= static_cast<double>(diff.size());
    result.fits.push_back({model.name, std::exp2(mean), residual});
    if (residual < best) {
      best = residual;
      result.winner = model.name;
      result.constant = std::exp2(mean);
    }
  }
  return result;
}

std::vector<CurvePoint> lower_bound_curve(const GrowthTable& growth, std::size_t first,
                                          std::size_t last) {
  std::vector<CurvePoint> curve;
  const std::size_t end = std::min(last, growth.values.empty() ? 0 : growth.values.size() - 1);
  if (growth.values.empty()) return curve;
  for (std::size_t n = first; n <= end; ++n) {
    curve.push_back({n, static_cast<double>(n) * std::log2(static_cast<double>(growth.values[n]))});
  }
  return curve;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "n,n_log_gamma\n";
  out.precision(10);
  for (const auto& point : curve) out << point.n << ',' << point.value << '\n';
  return out.str();
}

std::string bench_report_json(std::string_view family, std::uint64_t seed,
                              const std::vector<BenchRow>& rows, const FitResult& fit) {
  nlohmann::json j;
  j["family"] = family;
  j["seed"] = seed;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"m", row.m}, {"n", row.n}, {"stages", row.stages}, {"steps", row.steps}});
  }
  nlohmann::json models = nlohmann::json::array();
  for (const auto& f : fit.fits) {
    models.push_back({{"model", f.model}, {"constant", f.constant}, {"residual", f.residual}});
  }
  j["fit"] = {{"winner", fit.winner}, {"constant", fit.constant}, {"models", models}};
  return j.dump(2);
}

}  // namespace autgroup
