#include "sdof/dof_calculus.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace sdof {

namespace {

// floor(x / 3) for x >= 0
int third(int x) { return x / 3; }

}  // namespace

HelperConfig equivalent_helper(const AntennaConfig& cfg) {
  return {cfg.n_a, cfg.n_b_t, positive_part(cfg.n_b_r() - cfg.n_e_t),
          positive_part(cfg.n_e_r() - cfg.n_e_t)};
}

std::array<int, 2> s1_s2(const HelperConfig& cfg) {
  const int base = std::min(cfg.n_s, cfg.n_ep);
  const int s1 = positive_part(
      base + std::min(positive_part(cfg.n_h - cfg.n_d), cfg.n_ep) - cfg.n_ep);
  const int s2 =
      positive_part(base + std::min(cfg.n_h, cfg.n_ep) - cfg.n_ep) - s1;
  return {s1, s2};
}

int helper_g(const HelperConfig& cfg) {
  const auto [s1, s2] = s1_s2(cfg);
  const int d_c1 = positive_part(cfg.n_s - cfg.n_ep) + s1;
  const int d_c2 = std::min(s2, positive_part(cfg.n_d - d_c1) / 2);
  return std::min({d_c1 + d_c2, cfg.n_d, cfg.n_s});
}

int helper_sdof_max(int n_sum, int n_s, int n_ep) {
  const int delta = third(positive_part(n_sum - std::abs(n_s - n_ep))) +
                    positive_part(n_s - n_ep);
  return std::min({delta, n_sum, n_s});
}

int helper_optimal_nh(int n_sum, int n_s, int n_ep) {
  const int gap = std::abs(n_s - n_ep);
  if (n_sum <= gap) return 0;
  const int share = third(n_sum - gap);
  return n_s <= n_ep ? n_ep - n_s + share : share;
}

int sdof_active(const AntennaConfig& cfg) {
  const int n_b_r = cfg.n_b_r();
  const int n_e_t = cfg.n_e_t;
  // Eve's receiver is swamped by her own jamming.
  if (n_e_t >= cfg.n_e_r()) return std::min(positive_part(n_b_r - n_e_t), cfg.n_a);
  // Bob's receiver is swamped by Eve's jamming.
  if (n_e_t >= n_b_r) return 0;
  return helper_g({cfg.n_a, cfg.n_b_t, n_b_r - n_e_t, cfg.n_e_r() - n_e_t});
}

namespace {

int closed_form_active_max(int n_a, int n_b, int n_e_t, int n_e_r) {
  if (n_e_t >= n_e_r) return std::min(positive_part(n_b - n_e_t), n_a);
  const int excess = n_a - n_e_r + n_e_t;
  const int eta =
      third(positive_part(n_b - n_e_t - std::abs(excess))) + positive_part(excess);
  return std::min({eta, positive_part(n_b - n_e_t), n_a});
}

int closed_form_bob_split(int n_a, int n_b, int n_e_t, int n_e_r) {
  const int excess = n_a - n_e_r + n_e_t;
  if (n_e_t < std::min(n_e_r, n_b - std::abs(excess))) {
    const int share = third(n_b - n_e_t - std::abs(excess));
    return n_a <= n_e_r - n_e_t ? n_e_r - n_e_t - n_a + share : share;
  }
  return 0;
}

// Conditions compare against (n_b - n_a) / 2 in exact integer arithmetic.
int closed_form_worst_case(int n_a, int n_b, int n_e) {
  const bool above_half_gap = n_b - n_a <= 2 * n_e;
  if (n_e >= n_b) return 0;
  if (above_half_gap && n_a <= n_e) {
    return std::min({third(n_b - n_e + n_a), n_b - n_e, n_a});
  }
  if (above_half_gap && n_e < std::min(n_b, n_a)) {
    if (n_e > n_a - n_b) return std::min(third(n_b - n_a + n_e) + n_a - n_e, n_b - n_e);
    return n_b - n_e;
  }
  if (2 * n_e < n_b - n_a) return n_a;
  throw std::logic_error("worst_case_sdof: no case matched");
}

}  // namespace

DofResult sdof_active_max(int n_a, int n_b, int n_e_t, int n_e_r) {
  DofResult out = oracle_max_over_split(n_a, n_b, n_e_t, n_e_r);
  out.dof = closed_form_active_max(n_a, n_b, n_e_t, n_e_r);
  out.optimizer = closed_form_bob_split(n_a, n_b, n_e_t, n_e_r);
  return out;
}

DofResult worst_case_sdof(int n_a, int n_b, int n_e) {
  DofResult out = oracle_worst_case(n_a, n_b, n_e);
  out.dof = closed_form_worst_case(n_a, n_b, n_e);
  return out;
}

CandidateCounts candidate_counts(const HelperConfig& cfg) {
  const auto [s1, s2] = s1_s2(cfg);
  return {positive_part(cfg.n_s - cfg.n_ep), s1, s2};
}

int greedy_stream_count(const CandidateCounts& counts, int n_d, int n_s) {
  int streams = 0;
  int used = 0;
  auto take = [&](int available, int cost) {
    for (int i = 0; i < available; ++i) {
      if (streams == n_s || used + cost > n_d) return;
      ++streams;
      used += cost;
    }
  };
  take(counts.c1, 1);
  take(counts.c2, 1);
  take(counts.c3, 2);
  return streams;
}

DofResult oracle_max_over_split(int n_a, int n_b, int n_e_t, int n_e_r) {
  DofResult out;
  out.dof = -1;
  for (int n_b_t = 0; n_b_t <= n_b; ++n_b_t) {
    const int d = sdof_active(AntennaConfig::from_split(n_a, n_b, n_b_t, n_e_t, n_e_r));
    if (d > out.dof) {
      out.dof = d;
      out.optimizer_set.clear();
    }
    if (d == out.dof) out.optimizer_set.push_back(n_b_t);
  }
  out.optimizer = out.optimizer_set.front();
  return out;
}

DofResult oracle_worst_case(int n_a, int n_b, int n_e) {
  DofResult out;
  out.dof = std::numeric_limits<int>::max();
  for (int n_e_t = 0; n_e_t <= n_e; ++n_e_t) {
    const int d = oracle_max_over_split(n_a, n_b, n_e_t, n_e - n_e_t).dof;
    if (d < out.dof) {
      out.dof = d;
      out.optimizer_set.clear();
    }
    if (d == out.dof) out.optimizer_set.push_back(n_e_t);
  }
  out.optimizer = out.optimizer_set.front();
  return out;
}

}  // namespace sdof
