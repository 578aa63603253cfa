#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(KGMS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("verify --suite prequant").code, 0);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify --suite observables --tol observables.a_k_equals_u=0").code, 1);
  EXPECT_EQ(run("verify --suite observables --tol no_such_check=1").code, 2);
  EXPECT_EQ(run("verify --tol observables.a_k_equals_u=-1").code, 2);
  EXPECT_EQ(run("verify --config /nonexistent.json").code, 2);
  const std::string bad = write_temp("bad.json", R"({"m": 0})");
  EXPECT_EQ(run("verify --config " + bad).code, 2);
  const std::string good = write_temp("good.json", R"({"N": 16, "n_max": 3, "seed": 4})");
  EXPECT_EQ(run("verify --suite observables --config " + good).code, 0);
}

TEST(Cli, ReportsAreDeterministic) {
  const CliRun a = run("verify --suite phase-space --seed 7");
  const CliRun b = run("verify --suite phase-space --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("verify --suite phase-space --seed 8").out);
}

TEST(Cli, SimulateZeroData) {
  std::ostringstream csv;
  csv << "index,phi0,pi0\n";
  for (int j = 0; j < 32; ++j) csv << j << ",0,0\n";
  const std::string path = write_temp("zero.csv", csv.str());
  const CliRun r = run("simulate --cauchy " + path + " --t-final 1 --n-out 3");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // time
    while (std::getline(cells, cell, ',')) EXPECT_EQ(std::stod(cell), 0.0) << line;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Cli, SimulateRejectsUnresolvedData) {
  std::ostringstream csv;
  for (int j = 0; j < 32; ++j) csv << j << "," << (j % 2 ? 1 : -1) << ",0\n";
  const std::string path = write_temp("alias.csv", csv.str());
  EXPECT_EQ(run("simulate --cauchy " + path).code, 2);
}

TEST(Cli, SimulateWithLeapfrog) {
  EXPECT_EQ(run("simulate --t-final 2 --n-out 5 --leapfrog-dt 0.01").code, 0);
}

TEST(Cli, BracketsAndPrequant) {
  const CliRun b = run("brackets");
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("\"pass\": true"), std::string::npos);
  const CliRun p = run("prequant --degree 2");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("spectrum"), std::string::npos);
}
