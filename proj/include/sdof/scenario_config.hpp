#pragma once

// Scenario files are flat `key = value` documents; `#` starts a comment.
// Every key must be known, and each may appear at most once.
//
//   n_a = 4            n_b = 7            n_e_t = 1          n_e_r = 5
//   r = 10             path_loss_exp = 3.5
//   eve_x = 0          eve_y = -10        (eve_y defaults to -r)
//   rho_b = 1          rho_e = 1          alpha_h = 0        alpha_g = 0
//   power_dbm = 0      noise_dbm = -60
//   sweep = eve_x      (eve_x | eve_y | rho | rho_b | rho_e | alpha_h | alpha_g | power_dbm)
//   sweep_from = -20   sweep_to = 20      sweep_points = 9
//   sweep_values = 0, 0.25, 0.5           (instead of from/to/points)
//   trials = 1000      seed = 1
//   schemes = proposed_fd, hd_baseline, alt_split:3

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdof/simulator.hpp"

namespace sdof {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// `overrides` are `key=value` strings applied on top of the document
/// before defaults are resolved, so e.g. overriding `r` also moves the
/// default `eve_y`.
ScenarioSpec parse_scenario(std::string_view text,
                            const std::vector<std::string>& overrides = {});
ScenarioSpec load_scenario(const std::string& path,
                           const std::vector<std::string>& overrides = {});

}  // namespace sdof
