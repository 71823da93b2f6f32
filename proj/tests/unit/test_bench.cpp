#include <gtest/gtest.h>

#include <cmath>

#include <json.hpp>

#include "autgroup/bench.hpp"
#include "autgroup/builtin.hpp"

namespace autgroup {
namespace {

std::vector<BenchRow> planted(double constant, const ComplexityModel& model) {
  std::vector<BenchRow> rows;
  for (std::size_t m = 4; m <= 20; ++m) {
    const double n = std::exp2(static_cast<double>(m));
    rows.push_back({m, static_cast<std::size_t>(n), 0,
                    static_cast<std::uint64_t>(std::llround(constant * model.shape(n)))});
  }
  return rows;
}

TEST(Fit, RecoversPlantedModels) {
  const auto nlogn = fit_complexity(planted(7, model_by_name("n log n")));
  EXPECT_EQ(nlogn.winner, "n log n");
  EXPECT_NEAR(nlogn.constant, 7.0, 0.35);
  const auto square = fit_complexity(planted(1, model_by_name("n^2")));
  EXPECT_EQ(square.winner, "n^2");
  EXPECT_NEAR(square.constant, 1.0, 0.05);
  const auto linear = fit_complexity(planted(3, model_by_name("n")));
  EXPECT_EQ(linear.winner, "n");
  const auto log2 = fit_complexity(planted(0.5, model_by_name("n log^2 n")));
  EXPECT_EQ(log2.winner, "n log^2 n");
  EXPECT_NEAR(log2.constant, 0.5, 0.025);
}

TEST(Fit, ResidualsAndAdvantage) {
  const auto fit = fit_complexity(planted(7, model_by_name("n log n")));
  ASSERT_EQ(fit.fits.size(), 4u);
  for (const auto& f : fit.fits) EXPECT_GE(f.residual, fit.fit(fit.winner).residual);
  EXPECT_GT(fit.advantage(), 2.0);
  EXPECT_THROW(fit.fit("n^3"), Error);
  EXPECT_THROW(fit_complexity({}), Error);
}

TEST(Fit, ModelNames) {
  EXPECT_EQ(model_by_name("n log^3 n").log_power, 3u);
  EXPECT_TRUE(model_by_name("n^2").quadratic);
  EXPECT_THROW(model_by_name("n!"), ParseError);
  EXPECT_DOUBLE_EQ(model_by_name("n log n").shape(8), 24.0);
}

TEST(Bench, EmptyRange) {
  const auto rows = run_bench("basilica", 5, 4);
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(bench_csv(rows), "m,n,stages,steps\n");
}

TEST(Bench, LengthsIncreaseAndStepsMonotone) {
  for (const auto& family : bench_families()) {
    const auto rows = run_bench(family.name, 3, 8);
    ASSERT_EQ(rows.size(), 6u) << family.name;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_GT(rows[i].n, rows[i - 1].n) << family.name;
      EXPECT_GE(rows[i].steps, rows[i - 1].steps) << family.name;
    }
  }
}

TEST(Bench, BasilicaPrefersNLogN) {
  const auto fit = fit_complexity(run_bench("basilica", 4, 12));
  EXPECT_EQ(fit.winner, "n log n");
}

TEST(Bench, DeterministicForSeed) {
  EXPECT_EQ(bench_csv(run_bench("heis", 3, 9, 7)), bench_csv(run_bench("heis", 3, 9, 7)));
  EXPECT_THROW(run_bench("nope", 1, 2), Error);
}

TEST(Bench, JsonReport) {
  const auto rows = run_bench("z4", 3, 6);
  const auto json = nlohmann::json::parse(bench_report_json("z4", 9, rows, fit_complexity(rows)));
  EXPECT_EQ(json["family"], "z4");
  EXPECT_EQ(json["seed"], 9);
  EXPECT_EQ(json["rows"].size(), 4u);
  EXPECT_EQ(json["rows"][0]["n"], 16);
  EXPECT_TRUE(json["fit"].contains("winner"));
}

TEST(LowerBoundCurve, IntegersAndGrigorchuk) {
  const AutomatonGroup add(builtin_automaton("adding"));
  const auto z = lower_bound_curve(growth(add, 20), 0, 20);
  ASSERT_EQ(z.size(), 21u);
  EXPECT_EQ(z[0].value, 0.0);
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_DOUBLE_EQ(z[n].value, static_cast<double>(n) * std::log2(2.0 * static_cast<double>(n) + 1));
  }
  const AutomatonGroup g(builtin_automaton("grigorchuk"));
  const auto curve = lower_bound_curve(growth(g, 7), 0, 100);
  ASSERT_EQ(curve.size(), 8u);
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i].value, curve[i - 1].value);
  EXPECT_EQ(curve_csv({{0, 0.0}, {1, 2.5}}), "n,n_log_gamma\n0,0\n1,2.5\n");
}

}  // namespace
}  // namespace autgroup
