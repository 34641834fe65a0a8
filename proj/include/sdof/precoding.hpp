#pragma once

// Precoder construction for the full-duplex Bob scheme: project both
// receivers onto the null space of the jamming they see from Eve, enumerate
// message/jamming vector pairs that align at Eve, and pick them greedily
// under Bob's receive-dimension budget. Also hosts the half-duplex
// generalized-eigenvector baseline.

#include <string>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/dof_calculus.hpp"
#include "sdof/numerics.hpp"

namespace sdof {

enum class StreamClass {
  kC1,     ///< message in the null space of Eve's reduced channel, no jamming
  kC2,     ///< aligned with jamming at Eve, jamming invisible to Bob
  kC3,     ///< aligned with jamming at Eve, jamming costs Bob one dimension
  kEigen,  ///< generalized eigendirection (no jamming pair)
};

const char* to_string(StreamClass c);

/// Channels as seen through Bob's and Eve's jamming-free subspaces.
struct ReducedChannels {
  NullBasis<std::complex<double>> u_b0;  ///< left null basis of h_be
  NullBasis<std::complex<double>> u_e0;  ///< left null basis of g_ee
  CMatrix h_ba_bar, h_bb_bar;
  CMatrix g_ea_bar, g_eb_bar;

  /// Antenna counts of the equivalent helper channel these matrices realize.
  HelperConfig helper() const;
};

/// One message/jamming direction pair. Unit norm as a stacked vector; v_b is
/// all zeros for C1.
struct CandidatePair {
  CVector v_a;
  CVector v_b;
  StreamClass cls = StreamClass::kC1;
  double gain = 0.0;  ///< |h_ba_bar v_a| / |v_a|
};

struct Candidates {
  std::vector<CandidatePair> c1, c2, c3;

  CandidateCounts counts() const {
    return {static_cast<int>(c1.size()), static_cast<int>(c2.size()),
            static_cast<int>(c3.size())};
  }
};

struct PrecoderPair {
  CMatrix v_a;  ///< n_a x k
  CMatrix v_b;  ///< n_b_t x k_b, empty when Bob stays silent
  std::vector<StreamClass> stream_classes;
  /// Selected pairs before power scaling; empty for eigendirection designs.
  std::vector<CandidatePair> pairs;
  /// False when a null-space dimension differed from its generic count.
  bool generic = true;
  std::string note;

  int k() const { return static_cast<int>(v_a.cols()); }
  CMatrix q_a() const { return v_a * v_a.adjoint(); }
  CMatrix q_b() const { return v_b * v_b.adjoint(); }
};

ReducedChannels reduce(const ChannelSet& cs);

Candidates enumerate_candidates(const ReducedChannels& rc);

/// Greedy pick C1, then C2 (one receive dimension each), then C3 (two each)
/// while the total stays within `n_d` and fewer than `n_s` streams are taken.
/// Columns are the unit-norm pair components, not yet power-scaled.
PrecoderPair select_pairs(const Candidates& cands, int n_d, int n_s);

/// Scales every Alice column to power / k and every Bob column to
/// power / k_b.
void scale_to_power(PrecoderPair& pp, double power);

/// Full construction for the split carried by `cs.cfg`.
PrecoderPair build_precoders(const ChannelSet& cs);

/// Half-duplex baseline: Bob receives on all antennas (`cs.cfg.n_b_t` must
/// be 0) and Alice sends along the top-k generalized eigenvectors of the
/// interference-whitened Bob and Eve Gram matrices.
PrecoderPair hd_baseline(const ChannelSet& cs, int k);

}  // namespace sdof
