#pragma once

// Exhaustive cross-checks of the closed-form degrees-of-freedom results
// against brute-force search over antenna splits.

#include <string>
#include <vector>

namespace sdof {

struct VerifyBounds {
  int max_n_a = 10;    ///< n_a in [1, max_n_a]
  int max_n_b = 12;    ///< n_b in [1, max_n_b]
  int max_n_e = 12;    ///< n_e, n_e_t, n_e_r, n_s, n_ep in [0, max_n_e]
  int max_n_sum = 15;  ///< helper + destination antennas in [0, max_n_sum]
};

struct VerifyOptions {
  VerifyBounds bounds;
  /// Test hook: offsets the closed-form Bob optimum by one so the harness
  /// can confirm that mismatches are detected and reported.
  bool corrupt_closed_form = false;
  std::size_t max_counterexamples = 20;
};

struct CheckReport {
  std::string name;
  long long evaluated = 0;
  long long mismatches = 0;
  std::vector<std::string> counterexamples;

  bool passed() const { return mismatches == 0; }
};

struct VerifyReport {
  std::vector<CheckReport> checks;

  bool passed() const;
  const CheckReport* find(const std::string& name) const;
};

/// Checks, by name:
///   bob_split_optimum                 closed-form best Bob split vs exhaustive max
///   worst_case_closed_form            closed-form worst case vs exhaustive min over Eve splits
///   eve_extreme_split                 Eve's minimizing splits include 0 or n_e
///   positive_when_bob_outnumbers_eve  n_b > n_e implies worst-case dof >= 1
///   helper_allocation                 helper/destination split vs exhaustive max
///   budget                            greedy pair selection count equals helper_g
///   range                             0 <= dof <= min(n_a, n_b)
VerifyReport verify_grid(const VerifyOptions& options);

}  // namespace sdof
