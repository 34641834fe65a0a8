#pragma once

// Covariance-domain secrecy-rate evaluation and Monte-Carlo sweeps.
//
// Randomness is indexed, never sequential: trial t of a run seeded with s
// draws its channels from stream_seed(s, t, kChannelStream) and its CSI
// errors from stream_seed(s, t, kCsiBobStream / kCsiEveStream). The same
// trial therefore sees the same channels at every sweep point and under
// every scheme, and results do not depend on how trials are scheduled.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/dof_calculus.hpp"
#include "sdof/precoding.hpp"

namespace sdof {

inline constexpr const char* kArtifactVersion = "1.0.0";

inline constexpr std::uint64_t kChannelStream = 0x43484e;  // "CHN"
inline constexpr std::uint64_t kCsiBobStream = 0x435342;   // "CSB"
inline constexpr std::uint64_t kCsiEveStream = 0x435345;   // "CSE"

struct RatePair {
  double r_b = 0.0;
  double r_e = 0.0;
};

/// Bob's and Eve's achievable rates in bits for the given precoders.
RatePair rates(const ChannelSet& cs, const PrecoderPair& pp);

/// (r_b - r_e)^+
double secrecy_rate(const ChannelSet& cs, const PrecoderPair& pp);

struct Scheme {
  enum class Kind { kProposedFd, kHdBaseline, kAltSplit };
  Kind kind = Kind::kProposedFd;
  int n_b_t = 0;  ///< only for kAltSplit

  /// "proposed_fd", "hd_baseline" or "alt_split:<n>".
  std::string name() const;
  static Scheme parse(std::string_view text);

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

enum class SweepVar { kEveX, kEveY, kRho, kRhoB, kRhoE, kAlphaH, kAlphaG, kPower };

std::string_view to_string(SweepVar v);
SweepVar parse_sweep_var(std::string_view text);

struct ScenarioSpec {
  // Eve's split is fixed; Bob's split comes from each scheme.
  int n_a = 4;
  int n_b = 7;
  int n_e_t = 1;
  int n_e_r = 5;

  double r = 10.0;  ///< Alice at (-r, 0), Bob at (r, 0)
  double path_loss_exp = 3.5;
  double eve_x = 0.0;
  double eve_y = -10.0;

  double rho_b = 1.0;
  double rho_e = 1.0;
  double alpha_h = 0.0;
  double alpha_g = 0.0;
  double power_dbm = 0.0;
  double noise_dbm = -60.0;

  SweepVar sweep_var = SweepVar::kEveX;
  std::vector<double> sweep_values{0.0};

  int trials = 1000;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes{Scheme{}};

  /// Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
  /// Stable text form of every field; input to the config digest.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  std::string digest() const;
};

struct SimRow {
  double sweep_value = 0.0;
  std::string scheme;
  double mean_secrecy_rate = 0.0;
  double mean_rb = 0.0;
  double mean_re = 0.0;
  int k_streams = 0;  ///< most frequent stream count
  int trials = 0;     ///< successful trials
  int failed = 0;
};

struct SimResult {
  SweepVar sweep_var = SweepVar::kEveX;
  std::vector<SimRow> rows;
  std::uint64_t seed = 0;
  std::string config_digest;

  std::string to_csv() const;
  /// Sidecar record: seed, config digest, artifact version, failure counts.
  std::string metadata_json() const;
};

/// Bob's jamming count used by `scheme` for Eve's split (n_e_t, n_e_r).
int scheme_split(const Scheme& scheme, int n_a, int n_b, int n_e_t, int n_e_r);

/// One trial of one sweep point. `reference_k` is the stream count the
/// half-duplex baseline is matched to.
struct TrialInputs {
  AntennaConfig eve_split;  ///< n_b_t ignored
  Geometry geo;
  LinkBudget budget;
  double alpha_h = 0.0;
  double alpha_g = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

struct SchemeOutcome {
  RatePair rates;
  double secrecy = 0.0;
  int k = 0;
};

/// Draws the true channels for `scheme`, builds precoders from the
/// CSI-perturbed estimate and evaluates rates on the true channels.
SchemeOutcome run_trial(const TrialInputs& in, const Scheme& scheme, int reference_k);

/// Runs every sweep point and scheme. `threads` == 0 uses the hardware
/// concurrency; the result is identical for any value.
SimResult run_scenario(const ScenarioSpec& spec, unsigned threads = 1);

/// Setup for slope estimation: noise power fixed at 1, transmit power swept.
struct SlopeSetup {
  AntennaConfig eve_split;  ///< n_b_t ignored
  Geometry geo;
  double rho_b = 1.0;
  double rho_e = 1.0;
};

/// Mean over trials of (Rs(P_high) - Rs(P_low)) / log2(P_high / P_low),
/// channels fixed per trial. Powers are in dB relative to the noise.
double sdof_slope(const SlopeSetup& setup, const Scheme& scheme, double p_low_db,
                  double p_high_db, int trials, std::uint64_t seed);

}  // namespace sdof
