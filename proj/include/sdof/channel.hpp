#pragma once

// Random channel realizations for the Alice/Bob/Eve geometry: path-loss
// scaled unit-modulus phases on inter-node links, unit-modulus phases on the
// self-interference loops, and a Gauss-Markov model of imperfect CSI.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sdof/dof_calculus.hpp"
#include "sdof/numerics.hpp"

namespace sdof {

struct Geometry {
  Eigen::Vector2d alice{-10.0, 0.0};
  Eigen::Vector2d bob{10.0, 0.0};
  Eigen::Vector2d eve{0.0, -10.0};
  double path_loss_exp = 3.5;

  /// Alice at (-r, 0), Bob at (r, 0).
  static Geometry symmetric(double r, Eigen::Vector2d eve, double path_loss_exp = 3.5) {
    return {{-r, 0.0}, {r, 0.0}, eve, path_loss_exp};
  }

  /// Throws std::invalid_argument on non-finite coordinates or coincident nodes.
  void validate() const;
  /// Non-fatal remarks, e.g. a path-loss exponent outside [2, 4].
  std::vector<std::string> warnings() const;

  /// d^(-c/2) for the link between two nodes.
  double amplitude(const Eigen::Vector2d& from, const Eigen::Vector2d& to) const;
};

/// Transmit power and noise in linear watts, self-interference levels in [0, 1].
struct LinkBudget {
  double rho_b = 1.0;
  double rho_e = 1.0;
  double sigma2 = 1e-9;
  double power = 1e-3;
};

/// Per-link amplitude d^(-c/2); self-interference loops use 1.
struct LinkAmplitudes {
  double alice_bob = 1.0;
  double alice_eve = 1.0;
  double bob_eve = 1.0;
};

/// Channels of one realization. Receive-side rows, transmit-side columns:
/// h_ba is n_b_r x n_a, h_bb is n_b_r x n_b_t, h_be is n_b_r x n_e_t,
/// g_ea is n_e_r x n_a, g_eb is n_e_r x n_b_t, g_ee is n_e_r x n_e_t.
struct ChannelSet {
  AntennaConfig cfg;
  CMatrix h_ba, h_bb, h_be;
  CMatrix g_ea, g_eb, g_ee;
  LinkBudget budget;
  LinkAmplitudes amp;

  /// True when every matrix has the dimensions implied by `cfg`.
  bool dimensions_match() const;
};

enum class LinkFamily {
  kIntoBob,  ///< h_ba, h_bb, h_be
  kIntoEve,  ///< g_ea, g_eb, g_ee
};

struct CsiPerturbation {
  double alpha = 0.0;
  LinkFamily target = LinkFamily::kIntoBob;
  std::uint64_t seed = 0;
};

/// Mixes a master seed with up to two counters into an independent stream
/// seed (splitmix64 finalizer over each word). Trial t, matrix m of a run
/// seeded with s uses stream_seed(s, t, m).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Matrix of e^{j theta}, theta uniform on [0, 2 pi).
CMatrix random_phases(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// Matrix of i.i.d. CN(0, 1) entries.
CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Draws one realization. Bob's channels are drawn for all n_b antennas and
/// then split (the first n_b_t antennas jam), so draws that differ only in
/// Bob's split share their randomness. Eve's channels are drawn at her split
/// dimensions directly, with the first n_e_t antennas jamming.
ChannelSet draw_channels(const AntennaConfig& cfg, const Geometry& geo,
                         const LinkBudget& budget, std::uint64_t seed);

/// Replaces every channel of the targeted family by
/// amp * (sqrt(1 - alpha^2) * unit + alpha * gaussian). alpha == 0 returns
/// the input unchanged.
ChannelSet perturb_csi(const ChannelSet& cs, const CsiPerturbation& pert);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace sdof
