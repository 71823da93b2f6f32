#pragma once

// Benchmark word families, complexity-model fitting on step counts and the
// n log2 gamma(n) reference curve. All logarithms are base 2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "autgroup/word_engine.hpp"

namespace autgroup {

struct BenchFamily {
  std::string name;
  /// Built-in automaton or instance group.
  std::string target;
  std::string solver;
  /// The m-th word, e.g. "(ab)^(2^m)".
  std::string pattern;
};

/// basilica, poly1, grigorchuk, z4, z2, heis, z4-random.
const std::vector<BenchFamily>& bench_families();
const BenchFamily& find_family(std::string_view name);

struct BenchRow {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t stages = 0;
  std::uint64_t steps = 0;
  bool accepted = false;
};

/// Runs the family's solver on words m = first..last (empty when
/// first > last). `seed` drives the random families only.
std::vector<BenchRow> run_bench(std::string_view family, std::size_t first, std::size_t last,
                                std::uint64_t seed = 1);

/// "m,n,stages,steps" header plus one line per row.
std::string bench_csv(const std::vector<BenchRow>& rows);

/// T(n) = c * n * log^j n, or c * n^2.
struct ComplexityModel {
  std::string name;
  unsigned log_power = 0;
  bool quadratic = false;

  double shape(double n) const;
};

/// n, n log n, n log^2 n, n^2.
std::vector<ComplexityModel> default_models();
ComplexityModel model_by_name(std::string_view name);

struct ModelFit {
  std::string model;
  double constant = 0;
  /// Mean squared log2 residual.
  double residual = 0;
};

struct FitResult {
  std::vector<ModelFit> fits;
  std::string winner;
  double constant = 0;

  const ModelFit& fit(std::string_view model) const;
  /// Smallest residual among the other models divided by the winner's.
  double advantage() const;
};

/// Least squares on log2 T = log2 c + log2 shape(n), one free constant per
/// model. Rows with n < 2 or no steps are ignored.
FitResult fit_complexity(const std::vector<BenchRow>& rows,
                         const std::vector<ComplexityModel>& models = default_models());

struct CurvePoint {
  std::size_t n = 0;
  double value = 0;
};

/// (n, n log2 gamma(n)) for n in [first, min(last, radius)].
std::vector<CurvePoint> lower_bound_curve(const GrowthTable& growth, std::size_t first,
                                          std::size_t last);
std::string curve_csv(const std::vector<CurvePoint>& curve);

/// {"family", "seed", "rows", "fit"}.
std::string bench_report_json(std::string_view family, std::uint64_t seed,
                              const std::vector<BenchRow>& rows, const FitResult& fit);

}  // namespace autgroup
