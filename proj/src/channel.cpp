#include "sdof/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sdof {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// stream ids of draw_channels
enum Stream : std::uint64_t {
  kHba = 1,
  kHbe = 2,
  kHbb = 3,
  kGea = 4,
  kGeb = 5,
  kGee = 6,
};

void perturb(CMatrix& m, double amp, double alpha, std::uint64_t seed) {
  if (m.size() == 0) return;
  std::mt19937_64 rng(seed);
  const CMatrix unit = m / amp;
  m = amp * (std::sqrt(1.0 - alpha * alpha) * unit + alpha * random_gaussian(m.rows(), m.cols(), rng));
}

}  // namespace

void Geometry::validate() const {
  if (!alice.allFinite() || !bob.allFinite() || !eve.allFinite() || !std::isfinite(path_loss_exp)) {
    throw std::invalid_argument("geometry: non-finite coordinate");
  }
  if ((alice - bob).norm() == 0.0 || (alice - eve).norm() == 0.0 || (bob - eve).norm() == 0.0) {
    throw std::invalid_argument("geometry: two nodes share a position");
  }
}

std::vector<std::string> Geometry::warnings() const {
  std::vector<std::string> out;
  if (path_loss_exp < 2.0 || path_loss_exp > 4.0) {
    std::ostringstream os;
    os << "path-loss exponent " << path_loss_exp << " is outside the usual range [2, 4]";
    out.push_back(os.str());
  }
  return out;
}

double Geometry::amplitude(const Eigen::Vector2d& from, const Eigen::Vector2d& to) const {
  return std::pow((from - to).norm(), -path_loss_exp / 2.0);
}

bool ChannelSet::dimensions_match() const {
  auto is = [](const CMatrix& m, int r, int c) { return m.rows() == r && m.cols() == c; };
  const int br = cfg.n_b_r(), bt = cfg.n_b_t, er = cfg.n_e_r(), et = cfg.n_e_t;
  return is(h_ba, br, cfg.n_a) && is(h_bb, br, bt) && is(h_be, br, et) &&
         is(g_ea, er, cfg.n_a) && is(g_eb, er, bt) && is(g_ee, er, et);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

CMatrix random_phases(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = std::polar(1.0, phase(rng));
  return m;
}

CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      m(i, j) = {re, normal(rng)};
    }
  return m;
}

ChannelSet draw_channels(const AntennaConfig& cfg, const Geometry& geo, const LinkBudget& budget,
                         std::uint64_t seed) {
  if (!cfg.valid()) throw std::invalid_argument("draw_channels: invalid antenna configuration");
  geo.validate();

  auto draw = [seed](Stream id, int rows, int cols) {
    std::mt19937_64 rng(stream_seed(seed, id));
    return random_phases(rows, cols, rng);
  };

  ChannelSet cs;
  cs.cfg = cfg;
  cs.budget = budget;
  cs.amp = {geo.amplitude(geo.alice, geo.bob), geo.amplitude(geo.alice, geo.eve),
            geo.amplitude(geo.bob, geo.eve)};

  const int n_b = cfg.n_b, n_b_t = cfg.n_b_t, n_b_r = cfg.n_b_r();
  const int n_e_t = cfg.n_e_t, n_e_r = cfg.n_e_r();

  cs.h_ba = cs.amp.alice_bob * draw(kHba, n_b, cfg.n_a).bottomRows(n_b_r);
  cs.h_be = cs.amp.bob_eve * draw(kHbe, n_b, n_e_t).bottomRows(n_b_r);
  cs.h_bb = draw(kHbb, n_b, n_b).bottomLeftCorner(n_b_r, n_b_t);
  cs.g_ea = cs.amp.alice_eve * draw(kGea, n_e_r, cfg.n_a);
  cs.g_eb = cs.amp.bob_eve * draw(kGeb, n_e_r, n_b).leftCols(n_b_t);
  cs.g_ee = draw(kGee, n_e_r, n_e_t);
  return cs;
}

ChannelSet perturb_csi(const ChannelSet& cs, const CsiPerturbation& pert) {
  if (!(pert.alpha >= 0.0 && pert.alpha <= 1.0)) {
    throw std::invalid_argument("perturb_csi: alpha must lie in [0, 1]");
  }
  if (pert.alpha == 0.0) return cs;
  ChannelSet out = cs;
  const double a = pert.alpha;
  auto seed = [&](Stream id) { return stream_seed(pert.seed, id); };
  if (pert.target == LinkFamily::kIntoBob) {
    perturb(out.h_ba, cs.amp.alice_bob, a, seed(kHba));
    perturb(out.h_bb, 1.0, a, seed(kHbb));
    perturb(out.h_be, cs.amp.bob_eve, a, seed(kHbe));
  } else {
    perturb(out.g_ea, cs.amp.alice_eve, a, seed(kGea));
    perturb(out.g_eb, cs.amp.bob_eve, a, seed(kGeb));
    perturb(out.g_ee, 1.0, a, seed(kGee));
  }
  return out;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace sdof
