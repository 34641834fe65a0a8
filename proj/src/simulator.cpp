#include "sdof/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace sdof {

namespace {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct PointSettings {
  Geometry geo;
  LinkBudget budget;
  double alpha_h = 0.0;
  double alpha_g = 0.0;
};

PointSettings settings_at(const ScenarioSpec& spec, double value) {
  double eve_x = spec.eve_x, eve_y = spec.eve_y;
  double rho_b = spec.rho_b, rho_e = spec.rho_e;
  double alpha_h = spec.alpha_h, alpha_g = spec.alpha_g;
  double power_dbm = spec.power_dbm;
  switch (spec.sweep_var) {
    case SweepVar::kEveX: eve_x = value; break;
    case SweepVar::kEveY: eve_y = value; break;
    case SweepVar::kRho: rho_b = rho_e = value; break;
    case SweepVar::kRhoB: rho_b = value; break;
    case SweepVar::kRhoE: rho_e = value; break;
    case SweepVar::kAlphaH: alpha_h = value; break;
    case SweepVar::kAlphaG: alpha_g = value; break;
    case SweepVar::kPower: power_dbm = value; break;
  }
  PointSettings s;
  s.geo = Geometry::symmetric(spec.r, {eve_x, eve_y}, spec.path_loss_exp);
  s.budget = {rho_b, rho_e, dbm_to_watts(spec.noise_dbm), dbm_to_watts(power_dbm)};
  s.alpha_h = alpha_h;
  s.alpha_g = alpha_g;
  return s;
}

// Per trial: one outcome per scheme, or nothing when that scheme failed.
struct TrialRecord {
  std::vector<SchemeOutcome> outcomes;
  std::vector<bool> ok;
};

bool needs_reference(const std::vector<Scheme>& schemes) {
  return std::any_of(schemes.begin(), schemes.end(),
                     [](const Scheme& s) { return s.kind == Scheme::Kind::kHdBaseline; });
}

TrialRecord run_schemes(const TrialInputs& in, const std::vector<Scheme>& schemes) {
  TrialRecord rec;
  rec.outcomes.resize(schemes.size());
  rec.ok.assign(schemes.size(), false);
  int reference_k = 0;
  bool reference_ok = true;
  if (needs_reference(schemes)) {
    try {
      reference_k = run_trial(in, Scheme{}, 0).k;
    } catch (const NumericalError&) {
      reference_ok = false;
    }
  }
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (schemes[i].kind == Scheme::Kind::kHdBaseline && !reference_ok) continue;
    try {
      rec.outcomes[i] = run_trial(in, schemes[i], reference_k);
      rec.ok[i] = true;
    } catch (const NumericalError&) {
    }
  }
  return rec;
}

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

RatePair rates(const ChannelSet& cs, const PrecoderPair& pp) {
  if (!cs.dimensions_match()) throw std::invalid_argument("rates: channel dimensions do not match");
  const auto& b = cs.budget;
  const CMatrix q_a = pp.v_a.cols() > 0 ? pp.q_a() : CMatrix::Zero(cs.cfg.n_a, cs.cfg.n_a);
  const CMatrix q_b = pp.v_b.cols() > 0 ? pp.q_b() : CMatrix::Zero(cs.cfg.n_b_t, cs.cfg.n_b_t);
  if (q_a.rows() != cs.cfg.n_a || q_b.rows() != cs.cfg.n_b_t) {
    throw std::invalid_argument("rates: precoder dimensions do not match");
  }
  const double eve_jam = cs.cfg.n_e_t > 0 ? b.power / cs.cfg.n_e_t : 0.0;

  CMatrix w_b = b.rho_b * cs.h_bb * q_b * cs.h_bb.adjoint();
  if (cs.cfg.n_e_t > 0) w_b += eve_jam * cs.h_be * cs.h_be.adjoint();
  CMatrix w_e = cs.g_eb * q_b * cs.g_eb.adjoint();
  if (cs.cfg.n_e_t > 0) w_e += b.rho_e * eve_jam * cs.g_ee * cs.g_ee.adjoint();

  return {rate_logdet(cs.h_ba, q_a, w_b, b.sigma2), rate_logdet(cs.g_ea, q_a, w_e, b.sigma2)};
}

double secrecy_rate(const ChannelSet& cs, const PrecoderPair& pp) {
  const RatePair r = rates(cs, pp);
  return std::max(r.r_b - r.r_e, 0.0);
}

std::string Scheme::name() const {
  switch (kind) {
    case Kind::kProposedFd: return "proposed_fd";
    case Kind::kHdBaseline: return "hd_baseline";
    case Kind::kAltSplit: return "alt_split:" + std::to_string(n_b_t);
  }
  return "?";
}

Scheme Scheme::parse(std::string_view text) {
  if (text == "proposed_fd") return {Kind::kProposedFd, 0};
  if (text == "hd_baseline") return {Kind::kHdBaseline, 0};
  constexpr std::string_view prefix = "alt_split:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    int n = -1;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (res.ec == std::errc() && res.ptr == digits.data() + digits.size() && n >= 0) {
      return {Kind::kAltSplit, n};
    }
  }
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::kEveX: return "eve_x";
    case SweepVar::kEveY: return "eve_y";
    case SweepVar::kRho: return "rho";
    case SweepVar::kRhoB: return "rho_b";
    case SweepVar::kRhoE: return "rho_e";
    case SweepVar::kAlphaH: return "alpha_h";
    case SweepVar::kAlphaG: return "alpha_g";
    case SweepVar::kPower: return "power_dbm";
  }
  return "?";
}

SweepVar parse_sweep_var(std::string_view text) {
  for (const SweepVar v : {SweepVar::kEveX, SweepVar::kEveY, SweepVar::kRho, SweepVar::kRhoB,
                           SweepVar::kRhoE, SweepVar::kAlphaH, SweepVar::kAlphaG, SweepVar::kPower}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown sweep variable '" + std::string(text) + "'");
}

void ScenarioSpec::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("scenario: " + msg); };
  if (n_a < 1 || n_b < 1 || n_e_t < 0 || n_e_r < 0) fail("antenna counts out of range");
  if (!(r > 0.0) || !std::isfinite(r)) fail("r must be positive");
  if (trials < 1) fail("trials must be at least 1");
  if (sweep_values.empty()) fail("empty sweep");
  if (schemes.empty()) fail("no schemes");
  for (const double v : sweep_values)
    if (!std::isfinite(v)) fail("non-finite sweep value");
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(rho_b) || !unit(rho_e)) fail("self-interference levels must lie in [0, 1]");
  if (!unit(alpha_h) || !unit(alpha_g)) fail("CSI uncertainty must lie in [0, 1]");
  for (const double v : sweep_values) {
    switch (sweep_var) {
      case SweepVar::kRho:
      case SweepVar::kRhoB:
      case SweepVar::kRhoE:
      case SweepVar::kAlphaH:
      case SweepVar::kAlphaG:
        if (!unit(v)) fail("sweep value outside [0, 1]");
        break;
      default: break;
    }
  }
  for (const Scheme& s : schemes) {
    if (s.kind == Scheme::Kind::kAltSplit && s.n_b_t > n_b) fail("alt_split exceeds Bob's antennas");
  }
  for (const double v : sweep_values) settings_at(*this, v).geo.validate();
}

std::string ScenarioSpec::canonical() const {
  std::ostringstream os;
  os << "n_a=" << n_a << "\nn_b=" << n_b << "\nn_e_t=" << n_e_t << "\nn_e_r=" << n_e_r
     << "\nr=" << format_double(r) << "\npath_loss_exp=" << format_double(path_loss_exp)
     << "\neve_x=" << format_double(eve_x) << "\neve_y=" << format_double(eve_y)
     << "\nrho_b=" << format_double(rho_b) << "\nrho_e=" << format_double(rho_e)
     << "\nalpha_h=" << format_double(alpha_h) << "\nalpha_g=" << format_double(alpha_g)
     << "\npower_dbm=" << format_double(power_dbm) << "\nnoise_dbm=" << format_double(noise_dbm)
     << "\nsweep=" << to_string(sweep_var) << "\nsweep_values=";
  for (std::size_t i = 0; i < sweep_values.size(); ++i)
    os << (i ? "," : "") << format_double(sweep_values[i]);
  os << "\ntrials=" << trials << "\nseed=" << seed << "\nschemes=";
  for (std::size_t i = 0; i < schemes.size(); ++i) os << (i ? "," : "") << schemes[i].name();
  os << "\n";
  return os.str();
}

std::string ScenarioSpec::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

std::string SimResult::to_csv() const {
  std::ostringstream os;
  os << "sweep_var,sweep_value,scheme,mean_secrecy_rate_bits,mean_rb_bits,mean_re_bits,k_streams,"
        "trials\n";
  for (const SimRow& r : rows) {
    os << to_string(sweep_var) << ',' << format_double(r.sweep_value) << ',' << r.scheme << ','
       << format_double(r.mean_secrecy_rate) << ',' << format_double(r.mean_rb) << ','
       << format_double(r.mean_re) << ',' << r.k_streams << ',' << r.trials << '\n';
  }
  return os.str();
}

std::string SimResult::metadata_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["config_digest"] = config_digest;
  j["artifact_version"] = kArtifactVersion;
  j["sweep_var"] = std::string(to_string(sweep_var));
  int failed = 0;
  for (const SimRow& r : rows) failed += r.failed;
  j["failed_trials"] = failed;
  return j.dump(2) + "\n";
}

int scheme_split(const Scheme& scheme, int n_a, int n_b, int n_e_t, int n_e_r) {
  switch (scheme.kind) {
    case Scheme::Kind::kProposedFd: return sdof_active_max(n_a, n_b, n_e_t, n_e_r).optimizer;
    case Scheme::Kind::kHdBaseline: return 0;
    case Scheme::Kind::kAltSplit: return scheme.n_b_t;
  }
  return 0;
}

SchemeOutcome run_trial(const TrialInputs& in, const Scheme& scheme, int reference_k) {
  AntennaConfig cfg = in.eve_split;
  cfg.n_b_t = scheme_split(scheme, cfg.n_a, cfg.n_b, cfg.n_e_t, cfg.n_e_r());
  const ChannelSet truth = draw_channels(cfg, in.geo, in.budget, stream_seed(in.seed, in.trial, kChannelStream));
  ChannelSet estimate = perturb_csi(
      truth, {in.alpha_h, LinkFamily::kIntoBob, stream_seed(in.seed, in.trial, kCsiBobStream)});
  estimate = perturb_csi(
      estimate, {in.alpha_g, LinkFamily::kIntoEve, stream_seed(in.seed, in.trial, kCsiEveStream)});

  const PrecoderPair pp = scheme.kind == Scheme::Kind::kHdBaseline
                              ? hd_baseline(estimate, std::max(reference_k, 1))
                              : build_precoders(estimate);
  SchemeOutcome out;
  out.rates = rates(truth, pp);
  out.secrecy = std::max(out.rates.r_b - out.rates.r_e, 0.0);
  out.k = pp.k();
  return out;
}

SimResult run_scenario(const ScenarioSpec& spec, unsigned threads) {
  spec.validate();
  SimResult result;
  result.sweep_var = spec.sweep_var;
  result.seed = spec.seed;
  result.config_digest = spec.digest();
  const AntennaConfig eve_split = AntennaConfig::from_split(spec.n_a, spec.n_b, 0, spec.n_e_t, spec.n_e_r);

  for (const double value : spec.sweep_values) {
    const PointSettings s = settings_at(spec, value);
    std::vector<TrialRecord> records(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, threads, [&](int t) {
      const TrialInputs in{eve_split, s.geo, s.budget, s.alpha_h, s.alpha_g, spec.seed,
                           static_cast<std::uint64_t>(t)};
      records[static_cast<std::size_t>(t)] = run_schemes(in, spec.schemes);
    });

    // Aggregation runs in trial order so sums are independent of scheduling.
    for (std::size_t i = 0; i < spec.schemes.size(); ++i) {
      SimRow row;
      row.sweep_value = value;
      row.scheme = spec.schemes[i].name();
      std::map<int, int> k_hist;
      for (const TrialRecord& rec : records) {
        if (!rec.ok[i]) {
          ++row.failed;
          continue;
        }
        const SchemeOutcome& o = rec.outcomes[i];
        row.mean_secrecy_rate += o.secrecy;
        row.mean_rb += o.rates.r_b;
        row.mean_re += o.rates.r_e;
        ++k_hist[o.k];
        ++row.trials;
      }
      if (row.failed * 100 > spec.trials) {
        throw NumericalError("run_scenario: " + std::to_string(row.failed) + " of " +
                             std::to_string(spec.trials) + " trials failed for " + row.scheme +
                             " at " + std::string(to_string(spec.sweep_var)) + "=" +
                             format_double(value));
      }
      if (row.trials > 0) {
        row.mean_secrecy_rate /= row.trials;
        row.mean_rb /= row.trials;
        row.mean_re /= row.trials;
        row.k_streams = std::max_element(k_hist.begin(), k_hist.end(), [](const auto& a, const auto& b) {
                          return a.second < b.second;
                        })->first;
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

double sdof_slope(const SlopeSetup& setup, const Scheme& scheme, double p_low_db, double p_high_db,
                  int trials, std::uint64_t seed) {
  if (!(p_high_db > p_low_db + 10.0)) {
    throw std::invalid_argument("sdof_slope: powers must be at least 10 dB apart");
  }
  if (trials < 1) throw std::invalid_argument("sdof_slope: trials must be positive");
  const std::vector<Scheme> schemes{scheme};
  const double octaves = (p_high_db - p_low_db) / (10.0 * std::log10(2.0));
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    double secrecy[2] = {0.0, 0.0};
    const double powers_db[2] = {p_low_db, p_high_db};
    for (int p = 0; p < 2; ++p) {
      const LinkBudget budget{setup.rho_b, setup.rho_e, 1.0, std::pow(10.0, powers_db[p] / 10.0)};
      const TrialInputs in{setup.eve_split, setup.geo, budget, 0.0, 0.0, seed, static_cast<std::uint64_t>(t)};
      const TrialRecord rec = run_schemes(in, schemes);
      if (!rec.ok[0]) throw NumericalError("sdof_slope: trial " + std::to_string(t) + " failed");
      secrecy[p] = rec.outcomes[0].secrecy;
    }
    total += (secrecy[1] - secrecy[0]) / octaves;
  }
  return total / trials;
}

}  // namespace sdof
