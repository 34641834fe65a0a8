#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SDOF_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "sdof_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const std::string kFig4 = std::string(SDOF_SCENARIO_DIR) + "/fig4.cfg";

TEST(Cli, SdofHeadline) {
  const auto r = run("sdof --na 4 --nb 7 --net 1 --ner 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dof=2\n"), std::string::npos);
  EXPECT_NE(r.out.find("nbt_star=2\n"), std::string::npos);
}

TEST(Cli, SdofExamples) {
  EXPECT_NE(run("sdof --na 3 --nb 5 --net 0 --ner 0").out.find("dof=3\n"), std::string::npos);
  const auto r = run("sdof --na 10 --nb 18 --net 3 --ner 17 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dof"], 3);
  EXPECT_EQ(j["nbt_star"], 7);
}

TEST(Cli, SdofGivenSplit) {
  const auto r = run("sdof --na 4 --nb 7 --nbt 3 --net 1 --ner 5 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["dof"], 1);
}

TEST(Cli, WorstCase) {
  const auto r = run("worstcase --na 4 --nb 7 --ne 6 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dof"], 1);
  for (int v : j["argmin"]) EXPECT_TRUE(v == 0 || v == 6);
  EXPECT_NE(run("worstcase --na 10 --nb 18 --ne 20").out.find("dof=0\n"), std::string::npos);
  EXPECT_NE(run("worstcase --na 2 --nb 10 --ne 3").out.find("dof=2\n"), std::string::npos);
}

TEST(Cli, CsvOutputParses) {
  const auto r = run("worstcase --na 4 --nb 7 --ne 6 --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

TEST(Cli, ArgumentErrors) {
  EXPECT_EQ(run("sdof --na 4 --nb 7 --net 1").code, 2);
  EXPECT_EQ(run("sdof --na 0 --nb 7 --net 1 --ner 5").code, 2);
  EXPECT_EQ(run("sdof --na 4 --nb 7 --nbt 8 --net 1 --ner 5").code, 2);
  EXPECT_EQ(run("sdof --na 4 --nb 7 --net 1 --ner 5 --format xml").code, 2);
  EXPECT_EQ(run("worstcase --na 4 --nb 7 --ne -1").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("simulate " + kFig4 + " --set nope=1 --out -").code, 2);
  EXPECT_EQ(run("simulate /nonexistent.cfg").code, 2);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --max-na 1 --max-nb 1 --max-ne 0 --max-nsum 0").code, 0);
  const auto bad = run("verify --max-na 4 --max-nb 4 --max-ne 3 --inject-fault");
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.out.find("FAIL bob_split_optimum"), std::string::npos);
  const auto j = run("verify --max-na 3 --max-nb 3 --max-ne 2 --max-nsum 4 --format json");
  EXPECT_TRUE(nlohmann::json::accept(j.out));
}

TEST(Cli, SimulateWritesCsvAndSidecar) {
  const auto out = scratch("fig4_small.csv");
  const auto r = run("simulate " + kFig4 + " --trials 2 --seed 7 --set sweep_points=3 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("seed=7"), std::string::npos);
  EXPECT_NE(r.out.find("config_digest="), std::string::npos);
  const std::string csv = slurp(out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
  const auto meta = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
  EXPECT_EQ(meta["seed"], 7);
}

TEST(Cli, SimulateByteIdentical) {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
  const std::string base = "simulate " + kFig4 + " --trials 1 --seed 7 --out ";
  ASSERT_EQ(run(base + a.string()).code, 0);
  ASSERT_EQ(run(base + b.string()).code, 0);
  ASSERT_EQ(run(base + c.string() + " --threads 4").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
}

TEST(Cli, SimulateDefaultsToEnvDirectory) {
  const auto dir = scratch("envdir");
  std::filesystem::remove_all(dir);
  const std::string cmd = "SDOF_OUT_DIR=" + dir.string() + " " + std::string(SDOF_CLI_PATH) + " simulate " + kFig4 +
                          " --trials 1 --set sweep_points=1 > /dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "fig4.csv"));
}

}  // namespace
