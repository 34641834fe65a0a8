#include "sdof/scenario_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sdof {

namespace {

const std::set<std::string, std::less<>> kKeys = {
    "n_a",       "n_b",        "n_e_t",        "n_e_r",        "r",       "path_loss_exp",
    "eve_x",     "eve_y",      "rho_b",        "rho_e",        "alpha_h", "alpha_g",
    "power_dbm", "noise_dbm",  "sweep",        "sweep_from",   "sweep_to", "sweep_points",
    "sweep_values", "trials",  "seed",         "schemes"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("config: key '" + std::string(key) + "' expects a number, got '" +
                      std::string(text) + "'");
  }
  return value;
}

// Value of the swept quantity when no sweep points are given.
double current_value(const ScenarioSpec& spec) {
  switch (spec.sweep_var) {
    case SweepVar::kEveX: return spec.eve_x;
    case SweepVar::kEveY: return spec.eve_y;
    case SweepVar::kRho:
    case SweepVar::kRhoB: return spec.rho_b;
    case SweepVar::kRhoE: return spec.rho_e;
    case SweepVar::kAlphaH: return spec.alpha_h;
    case SweepVar::kAlphaG: return spec.alpha_g;
    case SweepVar::kPower: return spec.power_dbm;
  }
  return 0.0;
}

using Document = std::map<std::string, std::string, std::less<>>;

void assign(Document& doc, std::string_view line, bool allow_replace, int line_no) {
  const auto eq = line.find('=');
  auto where = [line_no] { return line_no > 0 ? " (line " + std::to_string(line_no) + ")" : std::string(); };
  if (eq == std::string_view::npos) throw ConfigError("config: expected key = value" + where());
  const std::string key(trim(line.substr(0, eq)));
  const std::string value(trim(line.substr(eq + 1)));
  if (!kKeys.contains(key)) throw ConfigError("config: unknown key '" + key + "'" + where());
  if (value.empty()) throw ConfigError("config: empty value for '" + key + "'" + where());
  if (!allow_replace && doc.contains(key)) throw ConfigError("config: duplicate key '" + key + "'" + where());
  doc[key] = value;
}

ScenarioSpec build(const Document& doc) {
  ScenarioSpec spec;
  auto number = [&](const char* key, auto& field) {
    if (const auto it = doc.find(key); it != doc.end()) {
      field = parse_number<std::decay_t<decltype(field)>>(key, it->second);
    }
  };
  number("n_a", spec.n_a);
  number("n_b", spec.n_b);
  number("n_e_t", spec.n_e_t);
  number("n_e_r", spec.n_e_r);
  number("r", spec.r);
  number("path_loss_exp", spec.path_loss_exp);
  number("eve_x", spec.eve_x);
  spec.eve_y = -spec.r;
  number("eve_y", spec.eve_y);
  number("rho_b", spec.rho_b);
  number("rho_e", spec.rho_e);
  number("alpha_h", spec.alpha_h);
  number("alpha_g", spec.alpha_g);
  number("power_dbm", spec.power_dbm);
  number("noise_dbm", spec.noise_dbm);
  number("trials", spec.trials);
  number("seed", spec.seed);

  if (const auto it = doc.find("sweep"); it != doc.end()) {
    try {
      spec.sweep_var = parse_sweep_var(it->second);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  const bool has_range = doc.contains("sweep_from") || doc.contains("sweep_to") || doc.contains("sweep_points");
  if (has_range && doc.contains("sweep_values")) {
    throw ConfigError("config: give either sweep_values or sweep_from/sweep_to/sweep_points");
  }
  if (has_range) {
    if (!doc.contains("sweep_from") || !doc.contains("sweep_to") || !doc.contains("sweep_points")) {
      throw ConfigError("config: sweep_from, sweep_to and sweep_points go together");
    }
    double from = 0, to = 0;
    int points = 0;
    number("sweep_from", from);
    number("sweep_to", to);
    number("sweep_points", points);
    if (points < 1) throw ConfigError("config: sweep_points must be positive");
    spec.sweep_values.clear();
    for (int i = 0; i < points; ++i) {
      spec.sweep_values.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
    }
  } else if (const auto it = doc.find("sweep_values"); it != doc.end()) {
    spec.sweep_values.clear();
    for (const auto item : split_list(it->second)) spec.sweep_values.push_back(parse_number<double>("sweep_values", item));
  } else {
    spec.sweep_values = {current_value(spec)};
  }

  if (const auto it = doc.find("schemes"); it != doc.end()) {
    spec.schemes.clear();
    for (const auto item : split_list(it->second)) {
      try {
        spec.schemes.push_back(Scheme::parse(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text, const std::vector<std::string>& overrides) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    assign(doc, line, false, line_no);
  }
  for (const auto& o : overrides) assign(doc, o, true, 0);
  return build(doc);
}

ScenarioSpec load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_scenario(text.str(), overrides);
}

}  // namespace sdof
