#include "sdof/precoding.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sdof {

namespace {

// Orthonormal basis of span(m), columns of m assumed bounded by 1 in norm.
CMatrix range_basis(const CMatrix& m) {
  if (m.cols() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > kRankTolerance) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Pairs (top * c, bottom * c) whose top parts are linearly independent of
// `taken` (orthonormal columns). Coefficients c come from the SVD of the
// projected top block, so the extracted directions depend only on the inputs.
std::vector<CandidatePair> independent_pairs(const CMatrix& top, const CMatrix& bottom,
                                             const CMatrix& taken, StreamClass cls,
                                             const CMatrix& h_ba_bar) {
  std::vector<CandidatePair> out;
  if (top.cols() == 0) return out;
  CMatrix projected = top;
  if (taken.cols() > 0) projected -= taken * (taken.adjoint() * top);
  Eigen::JacobiSVD<CMatrix> svd(projected, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  for (Eigen::Index i = 0; i < sigma.size() && sigma(i) > kRankTolerance; ++i) {
    const CVector c = svd.matrixV().col(i);
    CandidatePair p;
    p.v_a = top * c;
    p.v_b = bottom * c;
    const double norm = std::sqrt(p.v_a.squaredNorm() + p.v_b.squaredNorm());
    p.v_a /= norm;
    p.v_b /= norm;
    p.cls = cls;
    p.gain = h_ba_bar.rows() > 0 ? (h_ba_bar * p.v_a).norm() / p.v_a.norm() : 0.0;
    out.push_back(std::move(p));
  }
  return out;
}

CMatrix stack_v_a(const std::vector<CandidatePair>& pairs, Eigen::Index n_s) {
  CMatrix out(n_s, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = pairs[i].v_a;
  return out;
}

void set_generic_flag(PrecoderPair& pp, const CandidateCounts& found, const CandidateCounts& expected) {
  if (found == expected) return;
  pp.generic = false;
  std::ostringstream os;
  os << "non-generic channel draw: candidate counts (" << found.c1 << ", " << found.c2 << ", "
     << found.c3 << "), expected (" << expected.c1 << ", " << expected.c2 << ", " << expected.c3
     << ")";
  pp.note = os.str();
}

// Regularized pencil (a + eps I, b + eps I) with eps scaled to the larger trace.
std::vector<EigenPair<std::complex<double>>> regularized_pencil(CMatrix a, CMatrix b) {
  const Eigen::Index n = a.rows();
  const double scale = std::max(a.trace().real(), b.trace().real());
  const double eps = kDefiniteTolerance * (scale > 0.0 ? scale : 1.0);
  a.diagonal().array() += eps;
  b.diagonal().array() += eps;
  return gen_eig_hermitian(a, b, n);
}

PrecoderPair from_eigendirections(const std::vector<EigenPair<std::complex<double>>>& eig,
                                  std::size_t count, Eigen::Index n_a) {
  PrecoderPair pp;
  pp.v_a.resize(n_a, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    pp.v_a.col(static_cast<Eigen::Index>(i)) = eig[i].vector.normalized();
    pp.stream_classes.push_back(StreamClass::kEigen);
  }
  return pp;
}

// Covariance sigma2 I + scale * m m^H, solved against rhs.
CMatrix whiten_solve(const CMatrix& m, double scale, double sigma2, const CMatrix& rhs) {
  CMatrix k = CMatrix::Identity(rhs.rows(), rhs.rows()) * sigma2;
  if (m.cols() > 0) k += scale * m * m.adjoint();
  Eigen::LLT<CMatrix> llt(k);
  if (llt.info() != Eigen::Success) throw NumericalError("hd_baseline: covariance not definite");
  return llt.solve(rhs);
}

}  // namespace

const char* to_string(StreamClass c) {
  switch (c) {
    case StreamClass::kC1: return "C1";
    case StreamClass::kC2: return "C2";
    case StreamClass::kC3: return "C3";
    case StreamClass::kEigen: return "eig";
  }
  return "?";
}

HelperConfig ReducedChannels::helper() const {
  return {static_cast<int>(h_ba_bar.cols()), static_cast<int>(h_bb_bar.cols()),
          static_cast<int>(u_b0.dim()), static_cast<int>(u_e0.dim())};
}

ReducedChannels reduce(const ChannelSet& cs) {
  if (!cs.dimensions_match()) throw std::invalid_argument("reduce: channel dimensions do not match");
  ReducedChannels rc;
  rc.u_b0 = left_null_basis(cs.h_be);
  rc.u_e0 = left_null_basis(cs.g_ee);
  const CMatrix ub = rc.u_b0.basis.adjoint();
  const CMatrix ue = rc.u_e0.basis.adjoint();
  rc.h_ba_bar = ub * cs.h_ba;
  rc.h_bb_bar = ub * cs.h_bb;
  rc.g_ea_bar = ue * cs.g_ea;
  rc.g_eb_bar = ue * cs.g_eb;
  return rc;
}

Candidates enumerate_candidates(const ReducedChannels& rc) {
  const Eigen::Index n_s = rc.g_ea_bar.cols();
  const Eigen::Index n_h = rc.g_eb_bar.cols();
  const Eigen::Index n_ep = rc.g_ea_bar.rows();
  Candidates out;

  // C1: Alice alone, invisible to Eve.
  const CMatrix n1 = null_basis(rc.g_ea_bar).basis;
  for (Eigen::Index i = 0; i < n1.cols(); ++i) {
    CandidatePair p;
    p.v_a = n1.col(i);
    p.v_b = CVector::Zero(n_h);
    p.cls = StreamClass::kC1;
    p.gain = rc.h_ba_bar.rows() > 0 ? (rc.h_ba_bar * p.v_a).norm() : 0.0;
    out.c1.push_back(std::move(p));
  }
  if (n_h == 0) return out;

  // C2: g_ea v_a + g_eb v_b = 0 with v_b restricted to null(h_bb_bar).
  const CMatrix quiet = null_basis(rc.h_bb_bar).basis;
  if (quiet.cols() > 0) {
    CMatrix stacked(n_ep, n_s + quiet.cols());
    stacked << rc.g_ea_bar, rc.g_eb_bar * quiet;
    const CMatrix n2 = null_basis(stacked).basis;
    out.c2 = independent_pairs(n2.topRows(n_s), quiet * n2.bottomRows(quiet.cols()), n1,
                               StreamClass::kC2, rc.h_ba_bar);
    // Only C2 is ordered by Bob-side gain; C1 and C3 directions stay functions
    // of Eve's channels alone.
    std::stable_sort(out.c2.begin(), out.c2.end(),
                     [](const CandidatePair& x, const CandidatePair& y) { return x.gain > y.gain; });
  }

  // C3: g_ea v_a + g_eb v_b = 0, v_a outside the C1 and C2 spans.
  CMatrix aligned(n_ep, n_s + n_h);
  aligned << rc.g_ea_bar, rc.g_eb_bar;
  const CMatrix n3 = null_basis(aligned).basis;
  CMatrix taken(n_s, n1.cols() + static_cast<Eigen::Index>(out.c2.size()));
  taken << n1, stack_v_a(out.c2, n_s);
  out.c3 = independent_pairs(n3.topRows(n_s), n3.bottomRows(n_h), range_basis(taken),
                             StreamClass::kC3, rc.h_ba_bar);
  return out;
}

PrecoderPair select_pairs(const Candidates& cands, int n_d, int n_s) {
  std::vector<const CandidatePair*> chosen;
  int used = 0;
  auto take = [&](const std::vector<CandidatePair>& pool, int cost) {
    for (const auto& p : pool) {
      if (static_cast<int>(chosen.size()) == n_s || used + cost > n_d) return;
      chosen.push_back(&p);
      used += cost;
    }
  };
  take(cands.c1, 1);
  take(cands.c2, 1);
  take(cands.c3, 2);

  PrecoderPair pp;
  Eigen::Index rows_a = 0, rows_b = 0;
  for (const auto* group : {&cands.c1, &cands.c2, &cands.c3}) {
    if (!group->empty()) {
      rows_a = group->front().v_a.size();
      rows_b = group->front().v_b.size();
    }
  }
  const auto k = static_cast<Eigen::Index>(chosen.size());
  const auto k_b = std::count_if(chosen.begin(), chosen.end(),
                                 [](const CandidatePair* p) { return p->cls != StreamClass::kC1; });
  pp.v_a.resize(rows_a, k);
  pp.v_b.resize(rows_b, k_b);
  Eigen::Index jam = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const CandidatePair& p = *chosen[static_cast<std::size_t>(i)];
    pp.v_a.col(i) = p.v_a;
    if (p.cls != StreamClass::kC1) pp.v_b.col(jam++) = p.v_b;
    pp.stream_classes.push_back(p.cls);
    pp.pairs.push_back(p);
  }
  return pp;
}

void scale_to_power(PrecoderPair& pp, double power) {
  auto scale = [power](CMatrix& v) {
    const auto cols = v.cols();
    for (Eigen::Index i = 0; i < cols; ++i) {
      const double norm = v.col(i).norm();
      if (norm == 0.0) throw NumericalError("scale_to_power: zero precoding column");
      v.col(i) *= std::sqrt(power / static_cast<double>(cols)) / norm;
    }
  };
  scale(pp.v_a);
  scale(pp.v_b);
}

PrecoderPair build_precoders(const ChannelSet& cs) {
  const ReducedChannels rc = reduce(cs);
  const HelperConfig helper = rc.helper();
  PrecoderPair pp;

  if (cs.cfg.n_b_t == 0) {
    // No jamming: plain wiretap channel between the reduced main and
    // eavesdropper channels. Keep eigendirections where Bob beats Eve.
    const int cap = helper_g(helper);
    std::size_t count = 0;
    std::vector<EigenPair<std::complex<double>>> eig;
    if (cap > 0) {
      eig = regularized_pencil(rc.h_ba_bar.adjoint() * rc.h_ba_bar,
                               rc.g_ea_bar.adjoint() * rc.g_ea_bar);
      while (count < eig.size() && count < static_cast<std::size_t>(cap) && eig[count].value > 1.0) {
        ++count;
      }
    }
    pp = from_eigendirections(eig, count, cs.cfg.n_a);
    if (static_cast<int>(count) != cap) {
      pp.generic = false;
      pp.note = "fewer eigendirections above 1 than the achievable degrees of freedom";
    }
  } else {
    const Candidates cands = enumerate_candidates(rc);
    pp = select_pairs(cands, helper.n_d, helper.n_s);
    set_generic_flag(pp, cands.counts(), candidate_counts(helper));
  }
  if (pp.v_a.rows() == 0) pp.v_a.resize(cs.cfg.n_a, 0);
  if (pp.v_b.rows() == 0) pp.v_b.resize(cs.cfg.n_b_t, 0);
  scale_to_power(pp, cs.budget.power);
  return pp;
}

PrecoderPair hd_baseline(const ChannelSet& cs, int k) {
  if (cs.cfg.n_b_t != 0) throw std::invalid_argument("hd_baseline: Bob must not jam");
  if (k < 1) throw std::invalid_argument("hd_baseline: k must be positive");
  if (!cs.dimensions_match()) throw std::invalid_argument("hd_baseline: channel dimensions do not match");
  const auto& b = cs.budget;
  const double eve_jam = cs.cfg.n_e_t > 0 ? b.power / cs.cfg.n_e_t : 0.0;

  const CMatrix main = cs.h_ba.adjoint() * whiten_solve(cs.h_be, eve_jam, b.sigma2, cs.h_ba);
  const CMatrix tap = cs.g_ea.adjoint() * whiten_solve(cs.g_ee, b.rho_e * eve_jam, b.sigma2, cs.g_ea);
  const auto eig = regularized_pencil(main, tap);
  const auto count = static_cast<std::size_t>(std::min(k, cs.cfg.n_a));

  PrecoderPair pp = from_eigendirections(eig, count, cs.cfg.n_a);
  pp.v_b.resize(0, 0);
  scale_to_power(pp, b.power);
  return pp;
}

}  // namespace sdof
