#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/process.hpp"
#include "vnd/json_io.hpp"
#include "vnd/sweep.hpp"

namespace {

const std::string kCli = VND_CLI;
const std::string kAuto = VND_TEST_DATA "/auto.csv";

testproc::Output cli(const std::string& args, bool quiet = true) {
  return testproc::run("'" + kCli + "' " + args + (quiet ? " 2>/dev/null" : " 2>&1"));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vnd-cli-" + std::to_string(::getpid()) + "-" + name);
}

}  // namespace

TEST(Cli, AnalyzeJson) {
  const auto r = cli("analyze --input " + kAuto + " --target Horsepower --threshold median --exclude Name "
                     "--iterations 800 --nodes 8");
  ASSERT_EQ(r.exitCode, 0);
  const auto report = vnd::json::parse(r.out);
  EXPECT_EQ(report.at("datasetSummary").at("target"), "Horsepower");
  EXPECT_EQ(report.at("trainConfig").at("hiddenNodes"), 8);
  EXPECT_FALSE(report.at("nodeSummary").empty());
  EXPECT_TRUE(report.at("recovery").is_null());
}

TEST(Cli, AnalyzeTextToFile) {
  const auto path = temp_file("report.txt");
  const auto r = cli("analyze --input " + kAuto + " --target Horsepower --exclude Name --iterations 300 "
                     "--format text --out " + path.string());
  ASSERT_EQ(r.exitCode, 0);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("target Horsepower"), std::string::npos);
  EXPECT_NE(text.str().find("Node "), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, Benchmark) {
  const auto r = cli("analyze --benchmark three-var --nodes 20 --beta 0.1 --iterations 2000");
  ASSERT_EQ(r.exitCode, 0);
  const auto report = vnd::json::parse(r.out);
  ASSERT_TRUE(report.at("recovery").is_object());
  EXPECT_EQ(report.at("recovery").at("patternCount"), 6);
  EXPECT_EQ(report.at("datasetSummary").at("items"), 27000);
}

TEST(Cli, Deterministic) {
  const std::string args = "analyze --input " + kAuto + " --target Horsepower --exclude Name --iterations 500 --seed 3";
  const auto a = cli(args);
  const auto b = cli(args);
  ASSERT_EQ(a.exitCode, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(cli(args + " --seed 4").out, a.out);
}

TEST(Cli, Timestamp) {
  const std::string args = "analyze --benchmark xor2 --samples 400 --nodes 4 --iterations 50";
  EXPECT_TRUE(vnd::json::parse(cli(args).out).at("generatedAt").is_null());
  EXPECT_TRUE(vnd::json::parse(cli(args + " --timestamp").out).at("generatedAt").is_string());
  const auto pinned = testproc::run("SOURCE_DATE_EPOCH=0 '" + kCli + "' " + args);
  EXPECT_EQ(vnd::json::parse(pinned.out).at("generatedAt"), "1970-01-01T00:00:00Z");
}

TEST(Cli, UsageErrorsExitTwo) {
  const auto missing = cli("analyze --input " + kAuto, false);
  EXPECT_EQ(missing.exitCode, 2);
  EXPECT_NE(missing.out.find("--target"), std::string::npos);
  EXPECT_NE(missing.out.find("Usage"), std::string::npos);
  EXPECT_EQ(cli("").exitCode, 2);
  EXPECT_EQ(cli("analyze --bogus").exitCode, 2);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target MPG --nodes 0").exitCode, 2);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target MPG --format xml").exitCode, 2);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target MPG --threshold loud").exitCode, 2);
  EXPECT_EQ(cli("analyze --benchmark four-var").exitCode, 2);
  EXPECT_EQ(cli("sweep --betas 0.1 --hidden 0").exitCode, 2);
}

TEST(Cli, DataErrorsExitThree) {
  EXPECT_EQ(cli("analyze --input /nonexistent.csv --target MPG").exitCode, 3);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target Nope").exitCode, 3);
  const auto ragged = temp_file("ragged.csv");
  std::ofstream(ragged) << "a,b\n1,2\n3\n";
  EXPECT_EQ(cli("analyze --input " + ragged.string() + " --target b").exitCode, 3);
  std::filesystem::remove(ragged);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target MPG --batch 100000").exitCode, 3);
  EXPECT_EQ(cli("analyze --input " + kAuto + " --target Horsepower --threshold 100000").exitCode, 3);
}

TEST(Cli, DivergenceExitsFour) {
  EXPECT_EQ(cli("analyze --benchmark xor2 --samples 400 --nodes 4 --iterations 50 --lr 1e300").exitCode, 4);
}

TEST(Cli, SweepRowCounts) {
  const auto out = temp_file("sweep.csv");
  auto r = cli("sweep --betas 0.1 --hidden 4 --seeds 3 --iterations 100 --samples 1000 --out " + out.string());
  ASSERT_EQ(r.exitCode, 0);
  std::ifstream in(out);
  auto rows = vnd::read_sweep_csv(in);
  EXPECT_EQ(rows.size(), 3u);

  r = cli("sweep --betas 0,0.1,0.5 --hidden 8,20 --seeds 1 --iterations 50 --samples 1000 --jobs 2");
  ASSERT_EQ(r.exitCode, 0);
  std::istringstream csv(r.out);
  rows = vnd::read_sweep_csv(csv);
  ASSERT_EQ(rows.size(), 6u);
  std::set<std::pair<double, std::size_t>> cells;
  for (const auto& row : rows) cells.insert({row.beta, row.hidden});
  EXPECT_EQ(cells.size(), 6u);
  std::filesystem::remove(out);
}

TEST(Cli, Version) {
  const auto r = cli("--version");
  EXPECT_EQ(r.exitCode, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}
