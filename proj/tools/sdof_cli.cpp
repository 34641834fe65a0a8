#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdof/dof_calculus.hpp"
#include "sdof/numerics.hpp"
#include "sdof/scenario_config.hpp"
#include "sdof/simulator.hpp"
#include "sdof/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kArgumentError = 2, kNumericalError = 3, kVerificationFailed = 4 };

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string join(const std::vector<int>& v, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

json to_json(const std::vector<int>& v) { return json(v); }

// ---- sdof ----------------------------------------------------------------

struct SdofArgs {
  int n_a = -1, n_b = -1, n_e_t = -1, n_e_r = -1;
  std::optional<int> n_b_t;
  std::string format = "text";
};

int cmd_sdof(const SdofArgs& a) {
  const auto cfg = sdof::AntennaConfig::from_split(a.n_a, a.n_b, a.n_b_t.value_or(0), a.n_e_t, a.n_e_r);
  if (!cfg.valid() || a.n_b < 0 || a.n_e_r < 0) throw ArgumentError("invalid antenna counts");

  if (a.n_b_t) {
    const int dof = sdof::sdof_active(cfg);
    const auto helper = sdof::equivalent_helper(cfg);
    const auto counts = sdof::candidate_counts(helper);
    if (a.format == "json") {
      json j;
      j["n_a"] = a.n_a;
      j["n_b"] = a.n_b;
      j["n_b_t"] = *a.n_b_t;
      j["n_e_t"] = a.n_e_t;
      j["n_e_r"] = a.n_e_r;
      j["dof"] = dof;
      j["helper"] = {helper.n_s, helper.n_h, helper.n_d, helper.n_ep};
      j["candidates"] = {counts.c1, counts.c2, counts.c3};
      std::cout << j.dump(2) << '\n';
    } else if (a.format == "csv") {
      std::cout << "n_a,n_b,n_b_t,n_e_t,n_e_r,dof\n"
                << a.n_a << ',' << a.n_b << ',' << *a.n_b_t << ',' << a.n_e_t << ',' << a.n_e_r << ',' << dof << '\n';
    } else {
      std::cout << "dof=" << dof << '\n'
                << "helper=(" << helper.n_s << ',' << helper.n_h << ',' << helper.n_d << ',' << helper.n_ep << ")\n"
                << "candidates=(" << counts.c1 << ',' << counts.c2 << ',' << counts.c3 << ")\n";
    }
    return kOk;
  }

  const auto r = sdof::sdof_active_max(a.n_a, a.n_b, a.n_e_t, a.n_e_r);
  if (a.format == "json") {
    json j;
    j["n_a"] = a.n_a;
    j["n_b"] = a.n_b;
    j["n_e_t"] = a.n_e_t;
    j["n_e_r"] = a.n_e_r;
    j["dof"] = r.dof;
    j["nbt_star"] = r.optimizer;
    j["argmax"] = to_json(r.optimizer_set);
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::cout << "n_a,n_b,n_e_t,n_e_r,dof,nbt_star,argmax\n"
              << a.n_a << ',' << a.n_b << ',' << a.n_e_t << ',' << a.n_e_r << ',' << r.dof << ',' << r.optimizer
              << ',' << join(r.optimizer_set, ";") << '\n';
  } else {
    std::cout << "dof=" << r.dof << '\n'
              << "nbt_star=" << r.optimizer << '\n'
              << "argmax={" << join(r.optimizer_set, ",") << "}\n";
  }
  return kOk;
}

// ---- worstcase -------------------------------------------------------------

struct WorstArgs {
  int n_a = -1, n_b = -1, n_e = -1;
  std::string format = "text";
};

int cmd_worstcase(const WorstArgs& a) {
  if (a.n_a < 1 || a.n_b < 0 || a.n_e < 0) throw ArgumentError("invalid antenna counts");
  const auto r = sdof::worst_case_sdof(a.n_a, a.n_b, a.n_e);
  const auto& set = r.optimizer_set;
  const bool jam_only = std::find(set.begin(), set.end(), a.n_e) != set.end();
  const bool listen_only = std::find(set.begin(), set.end(), 0) != set.end();
  const char* strategy = jam_only && listen_only ? "either" : jam_only ? "jam_only" : listen_only ? "eavesdrop_only" : "mixed";
  if (a.format == "json") {
    json j;
    j["n_a"] = a.n_a;
    j["n_b"] = a.n_b;
    j["n_e"] = a.n_e;
    j["dof"] = r.dof;
    j["net_star"] = r.optimizer;
    j["argmin"] = to_json(set);
    j["eve_strategy"] = strategy;
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::cout << "n_a,n_b,n_e,dof,net_star,argmin,eve_strategy\n"
              << a.n_a << ',' << a.n_b << ',' << a.n_e << ',' << r.dof << ',' << r.optimizer << ','
              << join(set, ";") << ',' << strategy << '\n';
  } else {
    std::cout << "dof=" << r.dof << '\n'
              << "net_star=" << r.optimizer << '\n'
              << "argmin={" << join(set, ",") << "}\n"
              << "eve_strategy=" << strategy << '\n';
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  sdof::VerifyOptions opts;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a) {
  const auto& b = a.opts.bounds;
  if (b.max_n_a < 1 || b.max_n_b < 1 || b.max_n_e < 0 || b.max_n_sum < 0) throw ArgumentError("invalid grid bounds");
  const auto report = sdof::verify_grid(a.opts);
  if (a.format == "json") {
    json j;
    j["passed"] = report.passed();
    j["checks"] = json::array();
    for (const auto& c : report.checks) {
      j["checks"].push_back({{"name", c.name},
                             {"evaluated", c.evaluated},
                             {"mismatches", c.mismatches},
                             {"counterexamples", c.counterexamples}});
    }
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::cout << "check,evaluated,mismatches,status\n";
    for (const auto& c : report.checks) {
      std::cout << c.name << ',' << c.evaluated << ',' << c.mismatches << ',' << (c.passed() ? "pass" : "fail") << '\n';
    }
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed() ? "pass " : "FAIL ") << c.name << "  evaluated=" << c.evaluated
                << " mismatches=" << c.mismatches << '\n';
      for (const auto& ce : c.counterexamples) std::cout << "    " << ce << '\n';
      if (c.mismatches > static_cast<long long>(c.counterexamples.size())) {
        std::cout << "    ... " << c.mismatches - static_cast<long long>(c.counterexamples.size()) << " more\n";
      }
    }
    std::cout << (report.passed() ? "verification passed" : "verification FAILED") << '\n';
  }
  return report.passed() ? kOk : kVerificationFailed;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";
};

std::filesystem::path default_out_path(const std::string& config) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("SDOF_OUT_DIR"); env && *env) dir = env;
  return dir / (std::filesystem::path(config).stem().string() + ".csv");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
}

int cmd_simulate(const SimulateArgs& a) {
  std::vector<std::string> overrides = a.sets;
  if (a.seed) overrides.push_back("seed=" + std::to_string(*a.seed));
  if (a.trials) overrides.push_back("trials=" + std::to_string(*a.trials));
  const auto spec = sdof::load_scenario(a.config, overrides);
  const auto result = sdof::run_scenario(spec, a.threads);

  if (a.out == "-") {
    if (a.format == "json") {
      std::cout << result.metadata_json() << '\n';
    } else {
      std::cout << result.to_csv();
    }
    std::cerr << "seed=" << result.seed << " config_digest=" << result.config_digest << '\n';
    return kOk;
  }
  const auto path = a.out.empty() ? default_out_path(a.config) : std::filesystem::path(a.out);
  write_file(path, result.to_csv());
  auto meta = path;
  meta += ".meta.json";
  write_file(meta, result.metadata_json() + "\n");

  if (a.format == "json") {
    json j;
    j["csv"] = path.string();
    j["metadata"] = meta.string();
    j["seed"] = result.seed;
    j["config_digest"] = result.config_digest;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "seed=" << result.seed << '\n'
              << "config_digest=" << result.config_digest << '\n'
              << "csv=" << path.string() << '\n';
  }
  return kOk;
}

void add_format(CLI::App* cmd, std::string& format, const char* fallback) {
  format = fallback;
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy degrees of freedom calculus, verification and simulation"};
  app.set_version_flag("--version", sdof::kArtifactVersion);
  app.require_subcommand(1);

  SdofArgs sd;
  auto* c_sdof = app.add_subcommand("sdof", "S.D.o.F. for a given or optimal Bob split");
  c_sdof->add_option("--na", sd.n_a, "Alice antennas")->required();
  c_sdof->add_option("--nb", sd.n_b, "Bob antennas")->required();
  c_sdof->add_option("--nbt", sd.n_b_t, "Bob jamming antennas (omit to optimize)");
  c_sdof->add_option("--net", sd.n_e_t, "Eve jamming antennas")->required();
  c_sdof->add_option("--ner", sd.n_e_r, "Eve receive antennas")->required();
  add_format(c_sdof, sd.format, "text");

  WorstArgs wc;
  auto* c_worst = app.add_subcommand("worstcase", "S.D.o.F. when Eve picks her split last");
  c_worst->add_option("--na", wc.n_a, "Alice antennas")->required();
  c_worst->add_option("--nb", wc.n_b, "Bob antennas")->required();
  c_worst->add_option("--ne", wc.n_e, "Eve antennas")->required();
  add_format(c_worst, wc.format, "text");

  VerifyArgs vf;
  auto* c_verify = app.add_subcommand("verify", "Check closed forms against exhaustive search");
  c_verify->add_option("--max-na", vf.opts.bounds.max_n_a)->capture_default_str();
  c_verify->add_option("--max-nb", vf.opts.bounds.max_n_b)->capture_default_str();
  c_verify->add_option("--max-ne", vf.opts.bounds.max_n_e)->capture_default_str();
  c_verify->add_option("--max-nsum", vf.opts.bounds.max_n_sum)->capture_default_str();
  c_verify->add_option("--max-counterexamples", vf.opts.max_counterexamples)->capture_default_str();
  c_verify->add_flag("--inject-fault", vf.opts.corrupt_closed_form, "Corrupt the closed form (harness check)")
      ->group("");
  add_format(c_verify, vf.format, "text");

  SimulateArgs sm;
  auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo secrecy-rate sweep from a scenario file");
  c_sim->add_option("config", sm.config, "Scenario file")->required()->check(CLI::ExistingFile);
  c_sim->add_option("--set", sm.sets, "Override a scenario key (key=value)");
  c_sim->add_option("--seed", sm.seed, "Master seed");
  c_sim->add_option("--trials", sm.trials, "Trials per sweep point");
  c_sim->add_option("--threads", sm.threads, "Worker threads (0 = all cores)")->capture_default_str();
  c_sim->add_option("--out", sm.out, "CSV path, '-' for stdout (default $SDOF_OUT_DIR/<config>.csv)");
  add_format(c_sim, sm.format, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kArgumentError;
  }

  try {
    if (*c_sdof) return cmd_sdof(sd);
    if (*c_worst) return cmd_worstcase(wc);
    if (*c_verify) return cmd_verify(vf);
    if (*c_sim) return cmd_simulate(sm);
  } catch (const sdof::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kArgumentError;
}
