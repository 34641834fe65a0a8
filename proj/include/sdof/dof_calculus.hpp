#pragma once

// Closed-form secrecy degrees of freedom for the MIMO wiretap channel with a
// full-duplex active eavesdropper, plus exhaustive oracles for every formula.
//
// All functions are total on nonnegative antenna counts: degenerate inputs
// resolve through the (x)^+ clamps rather than raising.

#include <array>
#include <vector>

namespace sdof {

/// Antenna counts of Alice, Bob and Eve with the transmit/receive splits of
/// the two full-duplex nodes.
struct AntennaConfig {
  int n_a = 1;    ///< Alice
  int n_b = 1;    ///< Bob, total
  int n_b_t = 0;  ///< Bob, jamming
  int n_e = 0;    ///< Eve, total
  int n_e_t = 0;  ///< Eve, jamming

  int n_b_r() const { return n_b - n_b_t; }
  int n_e_r() const { return n_e - n_e_t; }

  bool valid() const {
    return n_a >= 1 && n_b_t >= 0 && n_b_t <= n_b && n_e_t >= 0 && n_e_t <= n_e;
  }

  /// Builds a config from Eve's split rather than her total.
  static AntennaConfig from_split(int n_a, int n_b, int n_b_t, int n_e_t,
                                  int n_e_r) {
    return {n_a, n_b, n_b_t, n_e_t + n_e_r, n_e_t};
  }
};

/// Antenna counts of the equivalent helper-assisted wiretap channel
/// (source, helper/jammer, destination, passive eavesdropper).
struct HelperConfig {
  int n_s = 0;
  int n_h = 0;
  int n_d = 0;
  int n_ep = 0;

  int n_sum() const { return n_h + n_d; }
  bool valid() const { return n_s >= 0 && n_h >= 0 && n_d >= 0 && n_ep >= 0; }
};

struct DofResult {
  int dof = 0;
  /// Canonical optimizing argument (Bob's jamming count, or Eve's).
  int optimizer = 0;
  /// Every argument attaining `dof`, ascending.
  std::vector<int> optimizer_set;
};

struct CandidateCounts {
  int c1 = 0;  ///< message in the null space of Eve's channel
  int c2 = 0;  ///< aligned at Eve, no self-interference at Bob
  int c3 = 0;  ///< aligned at Eve, one self-interference dimension at Bob

  friend bool operator==(const CandidateCounts&,
                         const CandidateCounts&) = default;
};

constexpr int positive_part(int x) { return x > 0 ? x : 0; }

/// Equivalent helper channel seen after Bob and Eve project onto the null
/// spaces of the jamming they receive. Clamps the receive dimensions at zero,
/// which folds the degenerate cases (Eve jams at least as many antennas as
/// either node receives with) into the same formulas.
HelperConfig equivalent_helper(const AntennaConfig& cfg);

std::array<int, 2> s1_s2(const HelperConfig& cfg);

/// Maximum S.D.o.F. of the helper-assisted channel at a fixed helper size.
int helper_g(const HelperConfig& cfg);

/// Maximum S.D.o.F. over all helper/destination splits of `n_sum` antennas.
int helper_sdof_max(int n_sum, int n_s, int n_ep);

/// A helper size attaining helper_sdof_max.
int helper_optimal_nh(int n_sum, int n_s, int n_ep);

/// Achievable S.D.o.F. at the concrete split in `cfg`.
int sdof_active(const AntennaConfig& cfg);

/// Best split for Bob. `optimizer` is the closed-form jamming count;
/// `optimizer_set` is filled by exhaustive evaluation of sdof_active.
DofResult sdof_active_max(int n_a, int n_b, int n_e_t, int n_e_r);

/// S.D.o.F. when Eve picks her split to minimize sdof_active_max.
/// `optimizer_set` holds every minimizing jamming count of Eve; `optimizer`
/// is its smallest element.
DofResult worst_case_sdof(int n_a, int n_b, int n_e);

CandidateCounts candidate_counts(const HelperConfig& cfg);

/// Streams obtained by taking C1 and C2 candidates at one receive dimension
/// each, then C3 candidates at two, while the budget `n_d` and `n_s` allow.
int greedy_stream_count(const CandidateCounts& counts, int n_d, int n_s);

DofResult oracle_max_over_split(int n_a, int n_b, int n_e_t, int n_e_r);
DofResult oracle_worst_case(int n_a, int n_b, int n_e);

}  // namespace sdof
