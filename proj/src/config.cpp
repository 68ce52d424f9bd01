#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "relay_rgg/harness.hpp"

namespace relay_rgg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': expected integer, got '" + v +
                       "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': expected number, got '" + v +
                       "'");
  }
}

std::vector<long> parse_long_list(const std::string& key, const std::string& v) {
  std::vector<long> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_long(key, trim(item)));
  if (out.empty()) throw config_error("config key '" + key + "': empty list");
  return out;
}

void apply_kv(ExperimentConfig& cfg, const std::string& key,
              const std::string& value) {
  if (key == "n") {
    cfg.n_values = parse_long_list(key, value);
  } else if (key == "rn") {
    cfg.rn = parse_double(key, value);
    cfg.r_rule = RRule::explicit_rn;
  } else if (key == "beta") {
    cfg.beta = parse_double(key, value);
    cfg.r_rule = RRule::beta_power;
  } else if (key == "rn_scale") {
    cfg.rn_scale = parse_double(key, value);
    cfg.r_rule = RRule::scale_sqrt;
  } else if (key == "gamma_file") {
    cfg.gamma_file = value;
  } else if (key == "gamma_builtin") {
    cfg.gamma_builtin = value;
  } else if (key == "density_file") {
    cfg.density_file = value;
  } else if (key == "mode") {
    if (value == "twopoint")
      cfg.ratio_mode = false;
    else if (value == "ratio")
      cfg.ratio_mode = true;
    else
      throw config_error("config key 'mode': expected twopoint or ratio, got '" +
                         value + "'");
  } else if (key == "eps") {
    cfg.eps = parse_double(key, value);
  } else if (key == "Ln") {
    cfg.Ln = parse_long(key, value);
  } else if (key == "Ln_mult") {
    cfg.Ln_mult = parse_double(key, value);
  } else if (key == "M") {
    cfg.M = parse_double(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_long(key, value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "C") {
    cfg.C_const = parse_double(key, value);
  } else if (key == "D") {
    cfg.D_const = parse_double(key, value);
  } else if (key == "a_exp") {
    cfg.a_exp = parse_double(key, value);
  } else if (key == "dist") {
    cfg.dist_d = parse_double(key, value);
  } else {
    throw config_error("unknown config key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig load_config(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& overrides,
    std::vector<std::string>* warnings) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw config_error("config file not found: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected key=value");
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (++seen[key] == 2 && warnings)
        warnings->push_back("duplicate config key '" + key +
                            "': last value wins");
      apply_kv(cfg, key, value);
    }
  }
  for (const auto& [key, value] : overrides) apply_kv(cfg, key, value);
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  if (!cfg.n_values.empty()) {
    out << "n=";
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i)
      out << (i ? "," : "") << cfg.n_values[i];
    out << "\n";
  }
  switch (cfg.r_rule) {
    case RRule::explicit_rn:
      if (cfg.rn > 0.0) out << "rn=" << format_double(cfg.rn) << "\n";
      break;
    case RRule::beta_power:
      out << "beta=" << format_double(cfg.beta) << "\n";
      break;
    case RRule::scale_sqrt:
      out << "rn_scale=" << format_double(cfg.rn_scale) << "\n";
      break;
  }
  if (!cfg.gamma_file.empty()) out << "gamma_file=" << cfg.gamma_file << "\n";
  if (!cfg.gamma_builtin.empty())
    out << "gamma_builtin=" << cfg.gamma_builtin << "\n";
  if (!cfg.density_file.empty())
    out << "density_file=" << cfg.density_file << "\n";
  out << "mode=" << (cfg.ratio_mode ? "ratio" : "twopoint") << "\n";
  out << "eps=" << format_double(cfg.eps) << "\n";
  if (cfg.Ln > 0) out << "Ln=" << cfg.Ln << "\n";
  if (cfg.Ln_mult > 0.0) out << "Ln_mult=" << format_double(cfg.Ln_mult) << "\n";
  out << "M=" << format_double(cfg.M) << "\n";
  out << "trials=" << cfg.trials << "\n";
  out << "seed=" << cfg.seed << "\n";
  out << "out=" << cfg.out << "\n";
  out << "alpha=" << format_double(cfg.alpha) << "\n";
  out << "C=" << format_double(cfg.C_const) << "\n";
  out << "D=" << format_double(cfg.D_const) << "\n";
  out << "a_exp=" << format_double(cfg.a_exp) << "\n";
  if (cfg.dist_d > 0.0) out << "dist=" << format_double(cfg.dist_d) << "\n";
  return out.str();
}

long ExperimentConfig::n() const {
  if (n_values.size() != 1)
    throw config_error("this experiment needs exactly one n value");
  return n_values[0];
}

double ExperimentConfig::r_for(long nv) const {
  switch (r_rule) {
    case RRule::explicit_rn:
      return rn;
    case RRule::beta_power:
      return std::pow(static_cast<double>(nv), -beta);
    case RRule::scale_sqrt:
      return rn_scale *
             std::sqrt(std::log(static_cast<double>(nv)) / static_cast<double>(nv));
  }
  return 0.0;
}

long ExperimentConfig::resolve_Ln(const DetGraph& gamma, double r) const {
  if (Ln > 0 && Ln_mult > 0.0)
    throw config_error("give either Ln or Ln_mult, not both");
  if (Ln > 0) return Ln;
  if (Ln_mult > 0.0)
    return static_cast<long>(Ln_mult * std::ceil(gamma.l_up / r - 1e-9));
  throw config_error("weight experiment needs Ln or Ln_mult");
}

DetGraph ExperimentConfig::load_gamma() const {
  if (!gamma_file.empty() && !gamma_builtin.empty())
    throw config_error("give either gamma_file or gamma_builtin, not both");
  if (!gamma_file.empty()) return DetGraph::from_file(gamma_file);
  if (gamma_builtin.empty())
    throw config_error("no backbone graph: set gamma_file or gamma_builtin");
  std::istringstream ss(gamma_builtin);
  std::string kind;
  ss >> kind;
  if (kind == "segment") {
    double d = 0.0;
    if (!(ss >> d)) throw config_error("gamma_builtin segment needs a length");
    return DetGraph::segment(d);
  }
  if (kind == "star") {
    int k = 0;
    double len = 0.3;
    if (!(ss >> k)) throw config_error("gamma_builtin star needs a spoke count");
    ss >> len;
    return DetGraph::star(k, len);
  }
  if (kind == "parallel") {
    int m = 0;
    if (!(ss >> m)) throw config_error("gamma_builtin parallel needs m");
    return gamma_parallel_example(m);
  }
  throw config_error("unknown gamma_builtin kind '" + kind + "'");
}

DensitySpec ExperimentConfig::load_density() const {
  if (density_file.empty()) return DensitySpec::uniform();
  return DensitySpec::from_file(density_file);
}

ChainMode ExperimentConfig::chain_mode() const {
  if (ratio_mode) return RatioMode{eps};
  return TwoPointMode{};
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg,
                                         const std::string& subcommand) {
  std::vector<std::string> warnings;
  const bool needs_gamma = subcommand == "distance" || subcommand == "length" ||
                           subcommand == "weight" || subcommand == "trend" ||
                           subcommand == "validate-gamma";
  const bool is_experiment = subcommand == "distance" || subcommand == "length" ||
                             subcommand == "weight" || subcommand == "trend" ||
                             subcommand == "rgg-stats" || subcommand == "sample";

  if (cfg.trials < 0) throw config_error("trials must be >= 0");
  if (is_experiment) {
    if (cfg.n_values.empty()) throw config_error("n is required");
    for (long nv : cfg.n_values) {
      if (nv < 0) throw config_error("n must be >= 0");
      if (subcommand != "sample" && !(cfg.r_for(std::max(nv, 2L)) > 0.0))
        throw config_error("adjacency distance r_n must resolve to > 0");
    }
    if (subcommand == "trend" && cfg.n_values.size() < 2)
      throw config_error("trend needs at least two n values");
    if (subcommand != "trend" && cfg.n_values.size() != 1)
      throw config_error(subcommand + " needs exactly one n value");
  }
  if (cfg.ratio_mode && !(cfg.eps > 0.0))
    throw config_error("ratio mode needs eps > 0");
  if (subcommand == "distance" || subcommand == "trend") {
    if (!(cfg.eps > 0.0)) throw config_error("distance events need eps > 0");
  }

  DetGraph gamma;
  if (needs_gamma) gamma = cfg.load_gamma();
  if (needs_gamma && gamma.e0() == 0)
    throw config_error("backbone graph has no edges");

  if (subcommand == "weight") {
    if (!(cfg.M > 2.0)) throw config_error("M must exceed 2");
    const double r = cfg.r_for(cfg.n());
    const long ln = cfg.resolve_Ln(gamma, r);
    if (static_cast<double>(ln) < gamma.l_up / r)
      throw config_error("Ln below l_up/r_n: no L_n-constrained relay RGG exists");
    const double regime = r * r * static_cast<double>(ln) / gamma.l0;
    if (regime > 0.1)
      warnings.push_back("regime: r_n^2*L_n/l0 = " + format_double(regime) +
                         " is not small");
  }
  if (cfg.r_rule == RRule::beta_power) {
    const double lim = cfg.ratio_mode ? (1.0 - cfg.alpha) / 2.0
                                      : (1.0 - cfg.alpha) / 4.0;
    if (cfg.beta >= lim)
      warnings.push_back("regime: beta = " + format_double(cfg.beta) +
                         " >= (1-alpha)/" + (cfg.ratio_mode ? "2" : "4") +
                         " = " + format_double(lim));
  }
  if (needs_gamma && is_experiment) {
    const long n_min =
        *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
    const double cap =
        std::pow(static_cast<double>(std::max(n_min, 2L)), cfg.alpha);
    if (static_cast<double>(gamma.e0()) > cap)
      warnings.push_back("regime: e0 = " + std::to_string(gamma.e0()) +
                         " exceeds n^alpha = " + format_double(cap));
    for (long nv : cfg.n_values) {
      const double r = cfg.r_for(std::max(nv, 2L));
      if (subcommand == "length" && gamma.l0 / r <= 1.0)
        warnings.push_back("regime: l0/r_n <= 1; circle chains need K > 1");
    }
  }
  return warnings;
}

}  // namespace relay_rgg
