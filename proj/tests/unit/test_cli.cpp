#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace autgroup {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "autgroup");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, Validate) {
  const auto r = run({"validate", "--automaton", "grigorchuk"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok states=5 letters=2 identity=e\n");
  const auto file = run({"validate", "--automaton", std::string(AUTGROUP_DATA_DIR) + "/basilica.aut"});
  EXPECT_EQ(file.code, 0);
  EXPECT_EQ(run({"validate", "--automaton", "missing.aut"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", "--automaton", "grigorchuk", "--method", "magic", "a"}).code, 2);
  EXPECT_EQ(run({"solve", "--automaton", "grigorchuk", "q"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SolveExitCodes) {
  EXPECT_EQ(run({"solve", "-a", "grigorchuk", "(ab)^16"}).code, 0);
  EXPECT_EQ(run({"solve", "-a", "grigorchuk", "(ab)^8"}).code, 1);
  EXPECT_EQ(run({"solve", "-a", "grigorchuk", "bcd", "--method", "oracle"}).code, 0);
  EXPECT_EQ(run({"solve", "-a", "grigorchuk", "a b", "--method", "contracting"}).code, 1);
  EXPECT_EQ(run({"solve", "-a", "basilica", "b b^-1", "--method", "bounded"}).code, 0);
  EXPECT_EQ(run({"solve", "-a", "poly1", "a A", "--method", "polynomial"}).code, 0);
  EXPECT_EQ(run({"solve", "-g", "z4", "a^16 A^16"}).code, 0);
  EXPECT_EQ(run({"solve", "-g", "heis", "a b A B", "--method", "nilpotent"}).code, 1);
  EXPECT_EQ(run({"solve", "-g", "heis", "a b", "--method", "bounded"}).code, 2);
}

TEST(Cli, SolveReports) {
  const auto json = run({"solve", "-a", "grigorchuk", "aa", "--report", "json", "-m", "contracting"});
  EXPECT_EQ(json.code, 0);
  EXPECT_NE(json.out.find("\"verdict\":\"accept\""), std::string::npos);
  const auto csv = run({"solve", "-g", "z4", "aaa", "-r", "csv"});
  EXPECT_EQ(csv.out, "solver,n,stages,steps,verdict\nnilpotent,3,1,6,reject\n");
}

TEST(Cli, SolveFromFile) {
  const std::string path = ::testing::TempDir() + "word.txt";
  std::ofstream(path) << "a b a b\n";
  EXPECT_EQ(run({"solve", "-a", "grigorchuk", "--file", path}).code, 1);
  std::remove(path.c_str());
}

TEST(Cli, MinimizeDualSectionClassifyGrowth) {
  EXPECT_EQ(run({"minimize", "-a", "grigorchuk"}).out.substr(0, 14), "alphabet: 0 1\n");
  EXPECT_EQ(run({"dual-section", "-a", "grigorchuk", "ad", "--at", "0"}).out, "eb\n");
  EXPECT_EQ(run({"classify", "-a", "poly1"}).out, "Polynomial(1)\n");
  EXPECT_EQ(run({"growth", "-a", "adding", "-n", "2"}).out, "n,gamma\n0,1\n1,3\n2,5\n");
  EXPECT_EQ(run({"growth", "-a", "adding", "-n", "1", "--curve"}).out.substr(0, 13), "n,n_log_gamma");
}

TEST(Cli, CertifyWritesTable) {
  const std::string path = ::testing::TempDir() + "basilica.cert";
  const auto r = run({"certify", "-a", "basilica", "-L", "3", "-k", "2", "--mode", "item1", "-o", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "pass");
  EXPECT_EQ(run({"solve", "-a", "basilica", "(ab)^4 (B A)^4", "-m", "bounded", "--certificate", path}).code, 0);
  std::remove(path.c_str());
  const auto fail = run({"certify", "-a", "basilica", "-L", "2", "-k", "1", "--mode", "item3"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("witness=aa"), std::string::npos);
}

TEST(Cli, BenchAndFit) {
  const auto bench = run({"bench", "z4", "--from", "3", "--to", "9", "--seed", "4"});
  EXPECT_EQ(bench.code, 0);
  EXPECT_EQ(bench.out.substr(0, bench.out.find('\n')), "# family=z4 seed=4");
  const std::string path = ::testing::TempDir() + "rows.csv";
  std::ofstream(path) << bench.out;
  const auto fit = run({"fit", path});
  EXPECT_EQ(fit.code, 0);
  EXPECT_NE(fit.out.find("winner,n log n"), std::string::npos);
  std::remove(path.c_str());
  const auto json = run({"bench", "basilica", "--to", "6", "--report", "json"});
  EXPECT_NE(json.out.find("\"family\": \"basilica\""), std::string::npos);
}

TEST(Cli, Selftest) {
  const auto r = run({"selftest"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace autgroup
