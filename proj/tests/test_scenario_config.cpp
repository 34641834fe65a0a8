#include "sdof/scenario_config.hpp"

#include <gtest/gtest.h>

namespace sdof {
namespace {

TEST(ParseScenario, DefaultsAndComments) {
  const auto spec = parse_scenario(R"(
# headline
n_a = 4   # Alice
r = 10
)");
  EXPECT_EQ(spec.n_a, 4);
  EXPECT_EQ(spec.n_b, 7);
  EXPECT_DOUBLE_EQ(spec.eve_y, -10.0);
  EXPECT_EQ(spec.sweep_var, SweepVar::kEveX);
  EXPECT_EQ(spec.sweep_values, std::vector<double>{0.0});
  EXPECT_EQ(spec.schemes.size(), 1u);
}

TEST(ParseScenario, EveYFollowsR) {
  EXPECT_DOUBLE_EQ(parse_scenario("r = 1\n").eve_y, -1.0);
  EXPECT_DOUBLE_EQ(parse_scenario("r = 1\neve_y = -3\n").eve_y, -3.0);
  EXPECT_DOUBLE_EQ(parse_scenario("r = 1\n", {"r=5"}).eve_y, -5.0);
}

TEST(ParseScenario, LinearSweep) {
  const auto spec = parse_scenario("sweep = eve_x\nsweep_from = -20\nsweep_to = 20\nsweep_points = 5\n");
  EXPECT_EQ(spec.sweep_values, (std::vector<double>{-20, -10, 0, 10, 20}));
}

TEST(ParseScenario, ListSweepAndSchemes) {
  const auto spec = parse_scenario(
      "sweep = alpha_h\nsweep_values = 0, 0.25,0.5 , 1\nschemes = proposed_fd, alt_split:4\n");
  EXPECT_EQ(spec.sweep_var, SweepVar::kAlphaH);
  EXPECT_EQ(spec.sweep_values, (std::vector<double>{0, 0.25, 0.5, 1}));
  ASSERT_EQ(spec.schemes.size(), 2u);
  EXPECT_EQ(spec.schemes[1].n_b_t, 4);
}

TEST(ParseScenario, SingleValueFromCurrentSetting) {
  const auto spec = parse_scenario("sweep = rho_e\nrho_e = 0.5\n");
  EXPECT_EQ(spec.sweep_values, std::vector<double>{0.5});
}

TEST(ParseScenario, OverridesReplace) {
  const auto spec = parse_scenario("trials = 1000\nseed = 1\n", {"trials=3", "seed = 9"});
  EXPECT_EQ(spec.trials, 3);
  EXPECT_EQ(spec.seed, 9u);
}

TEST(ParseScenario, Errors) {
  EXPECT_THROW(parse_scenario("n_a = 4\nn_a = 5\n"), ConfigError);
  EXPECT_THROW(parse_scenario("n_aa = 4\n"), ConfigError);
  EXPECT_THROW(parse_scenario("n_a 4\n"), ConfigError);
  EXPECT_THROW(parse_scenario("n_a = four\n"), ConfigError);
  EXPECT_THROW(parse_scenario("n_a = 4.5\n"), ConfigError);
  EXPECT_THROW(parse_scenario("n_a =\n"), ConfigError);
  EXPECT_THROW(parse_scenario("trials = 0\n"), ConfigError);
  EXPECT_THROW(parse_scenario("sweep = nope\n"), ConfigError);
  EXPECT_THROW(parse_scenario("schemes = fd\n"), ConfigError);
  EXPECT_THROW(parse_scenario("sweep_from = 0\nsweep_to = 1\n"), ConfigError);
  EXPECT_THROW(parse_scenario("sweep_values = 1\nsweep_from = 0\nsweep_to = 1\nsweep_points = 2\n"), ConfigError);
  EXPECT_THROW(parse_scenario("sweep_from = 0\nsweep_to = 1\nsweep_points = 0\n"), ConfigError);
  EXPECT_THROW(parse_scenario("", {"bogus=1"}), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/file.cfg"), ConfigError);
}

TEST(LoadScenario, ShippedPresetsParse) {
  for (const char* name : {"fig4", "fig5", "fig6", "fig7", "fig8_rho_b", "fig8_rho_e", "fig9", "fig9_alpha_g"}) {
    const std::string path = std::string(SDOF_SCENARIO_DIR) + "/" + name + ".cfg";
    EXPECT_NO_THROW(load_scenario(path)) << path;
  }
  const auto fig4 = load_scenario(std::string(SDOF_SCENARIO_DIR) + "/fig4.cfg");
  EXPECT_EQ(fig4.schemes.size(), 2u);
  EXPECT_DOUBLE_EQ(fig4.sweep_values.front(), -20.0);
  EXPECT_DOUBLE_EQ(fig4.sweep_values.back(), 20.0);
}

}  // namespace
}  // namespace sdof
