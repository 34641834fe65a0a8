#include "sdof/precoding.hpp"

#include <gtest/gtest.h>

namespace sdof {
namespace {

const Geometry kGeo = Geometry::symmetric(10.0, {0.0, -10.0});

ChannelSet headline(int n_b_t, std::uint64_t seed) {
  return draw_channels(AntennaConfig::from_split(4, 7, n_b_t, 1, 5), kGeo, {}, seed);
}

// |g_ea v_a + g_eb v_b| relative to the size of the two terms.
double alignment_residual(const ReducedChannels& rc, const CandidatePair& p) {
  const CVector at_eve = rc.g_ea_bar * p.v_a + rc.g_eb_bar * p.v_b;
  const double scale = rc.g_ea_bar.norm() * p.v_a.norm() + rc.g_eb_bar.norm() * p.v_b.norm();
  return at_eve.norm() / scale;
}

TEST(Reduce, HeadlineHelperDimensions) {
  const auto rc = reduce(headline(2, 1));
  const auto h = rc.helper();
  EXPECT_EQ(h.n_s, 4);
  EXPECT_EQ(h.n_h, 2);
  EXPECT_EQ(h.n_d, 4);
  EXPECT_EQ(h.n_ep, 4);
  EXPECT_LT((rc.u_b0.basis.adjoint() * headline(2, 1).h_be).norm(), 1e-12);
}

TEST(EnumerateCandidates, HeadlineCounts) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_EQ(enumerate_candidates(reduce(headline(2, seed))).counts(), (CandidateCounts{0, 0, 2}));
    EXPECT_EQ(enumerate_candidates(reduce(headline(4, seed))).counts(), (CandidateCounts{0, 2, 2}));
  }
}

TEST(EnumerateCandidates, ClassConditions) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (int n_b_t : {1, 2, 3, 4, 5}) {
      const auto rc = reduce(headline(n_b_t, seed));
      const auto c = enumerate_candidates(rc);
      for (const auto& p : c.c1) {
        EXPECT_LT((rc.g_ea_bar * p.v_a).norm() / rc.g_ea_bar.norm(), 1e-9);
        EXPECT_EQ(p.v_b.norm(), 0.0);
      }
      for (const auto& p : c.c2) {
        EXPECT_LT(alignment_residual(rc, p), 1e-9);
        EXPECT_LT((rc.h_bb_bar * p.v_b).norm() / (rc.h_bb_bar.norm() * p.v_b.norm()), 1e-9);
      }
      for (const auto& p : c.c3) EXPECT_LT(alignment_residual(rc, p), 1e-9);
      for (const auto* pool : {&c.c1, &c.c2, &c.c3})
        for (const auto& p : *pool) EXPECT_NEAR(p.v_a.squaredNorm() + p.v_b.squaredNorm(), 1.0, 1e-12);
    }
  }
}

TEST(EnumerateCandidates, MessageDirectionsIndependent) {
  const auto c = enumerate_candidates(reduce(headline(4, 3)));
  CMatrix all(4, 0);
  for (const auto* pool : {&c.c1, &c.c2, &c.c3})
    for (const auto& p : *pool) {
      all.conservativeResize(Eigen::NoChange, all.cols() + 1);
      all.col(all.cols() - 1) = p.v_a;
    }
  Eigen::JacobiSVD<CMatrix> svd(all);
  EXPECT_EQ(all.cols(), 4);
  EXPECT_GT(svd.singularValues().minCoeff(), 1e-6);
}

TEST(SelectPairs, HonorsBudget) {
  const auto c = enumerate_candidates(reduce(headline(4, 2)));
  auto pp = select_pairs(c, 2, 4);
  EXPECT_EQ(pp.k(), 2);
  EXPECT_EQ(pp.stream_classes, (std::vector<StreamClass>{StreamClass::kC2, StreamClass::kC2}));
  pp = select_pairs(c, 3, 4);
  EXPECT_EQ(pp.k(), 2);
  pp = select_pairs(c, 4, 4);
  EXPECT_EQ(pp.k(), 3);
  EXPECT_EQ(pp.stream_classes.back(), StreamClass::kC3);
  pp = select_pairs(c, 10, 1);
  EXPECT_EQ(pp.k(), 1);
}

TEST(BuildPrecoders, HeadlineSplits) {
  const auto two = build_precoders(headline(2, 5));
  EXPECT_TRUE(two.generic);
  EXPECT_EQ(two.k(), 2);
  EXPECT_EQ(two.stream_classes, (std::vector<StreamClass>{StreamClass::kC3, StreamClass::kC3}));
  EXPECT_EQ(two.v_b.cols(), 2);
  EXPECT_EQ(build_precoders(headline(3, 5)).k(), 1);
  EXPECT_EQ(build_precoders(headline(4, 5)).k(), 2);
}

TEST(BuildPrecoders, PowerScaling) {
  const auto cs = headline(2, 6);
  const auto pp = build_precoders(cs);
  EXPECT_NEAR(pp.q_a().trace().real(), cs.budget.power, 1e-15);
  EXPECT_NEAR(pp.q_b().trace().real(), cs.budget.power, 1e-15);
  for (Eigen::Index i = 0; i < pp.v_a.cols(); ++i)
    EXPECT_NEAR(pp.v_a.col(i).squaredNorm(), cs.budget.power / 2, 1e-18);
}

// Stream count of the numeric construction equals the closed-form per-split value.
TEST(BuildPrecoders, StreamCountMatchesSdofActive) {
  const auto geo = Geometry::symmetric(1.0, {0.0, -1.0});
  std::uint64_t seed = 100;
  int checked = 0;
  for (int n_a = 1; n_a <= 5; ++n_a)
    for (int n_b = 1; n_b <= 6; ++n_b)
      for (int n_b_t = 0; n_b_t <= n_b; ++n_b_t)
        for (int n_e_t = 0; n_e_t <= 3; ++n_e_t)
          for (int n_e_r = 0; n_e_r <= 5; ++n_e_r) {
            const auto cfg = AntennaConfig::from_split(n_a, n_b, n_b_t, n_e_t, n_e_r);
            const auto pp = build_precoders(draw_channels(cfg, geo, {}, ++seed));
            ASSERT_EQ(pp.k(), sdof_active(cfg))
                << n_a << ' ' << n_b << ' ' << n_b_t << ' ' << n_e_t << ' ' << n_e_r << ' ' << pp.note;
            ++checked;
          }
  EXPECT_GT(checked, 1000);
}

TEST(BuildPrecoders, IndependentOfBobSideCsiForC3) {
  const auto cs = headline(2, 7);
  const auto base = build_precoders(cs);
  for (double alpha : {0.25, 0.5, 1.0}) {
    const auto pp = build_precoders(perturb_csi(cs, {alpha, LinkFamily::kIntoBob, 99}));
    EXPECT_EQ(pp.v_a, base.v_a);
    EXPECT_EQ(pp.v_b, base.v_b);
  }
}

TEST(BuildPrecoders, NoJammingUsesEigendirections) {
  const auto cs = draw_channels(AntennaConfig::from_split(4, 7, 0, 0, 2), kGeo, {}, 3);
  const auto pp = build_precoders(cs);
  EXPECT_EQ(pp.k(), 2);
  EXPECT_EQ(pp.v_b.cols(), 0);
  for (auto c : pp.stream_classes) EXPECT_EQ(c, StreamClass::kEigen);
  // both directions lie (numerically) in the null space of Eve's channel
  EXPECT_LT((cs.g_ea * pp.v_a).norm() / (cs.g_ea.norm() * pp.v_a.norm()), 1e-5);
}

TEST(HdBaseline, ShapesAndErrors) {
  const auto cs = headline(0, 8);
  const auto pp = hd_baseline(cs, 2);
  EXPECT_EQ(pp.k(), 2);
  EXPECT_EQ(pp.v_b.size(), 0);
  EXPECT_NEAR(pp.q_a().trace().real(), cs.budget.power, 1e-15);
  EXPECT_EQ(hd_baseline(cs, 9).k(), 4);
  EXPECT_THROW(hd_baseline(cs, 0), std::invalid_argument);
  EXPECT_THROW(hd_baseline(headline(2, 8), 1), std::invalid_argument);
}

TEST(HdBaseline, NoEveJammingAllowed) {
  const auto cs = draw_channels(AntennaConfig::from_split(3, 4, 0, 0, 2), kGeo, {}, 9);
  EXPECT_EQ(hd_baseline(cs, 1).k(), 1);
}

TEST(StreamClass, Names) {
  EXPECT_STREQ(to_string(StreamClass::kC1), "C1");
  EXPECT_STREQ(to_string(StreamClass::kC3), "C3");
  EXPECT_STREQ(to_string(StreamClass::kEigen), "eig");
}

}  // namespace
}  // namespace sdof
