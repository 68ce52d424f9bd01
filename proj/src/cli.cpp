#include "relay_rgg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relay_rgg/harness.hpp"

namespace relay_rgg {

namespace {

struct FlagValues {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_flags(CLI::App* cmd, FlagValues& fv) {
  cmd->add_option("--config", fv.config_path, "key=value config file");
  // Every flag maps to exactly one config key; flags win over file values.
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"--n", "n"},
      {"--rn", "rn"},
      {"--beta", "beta"},
      {"--rn-scale", "rn_scale"},
      {"--gamma-file", "gamma_file"},
      {"--gamma-builtin", "gamma_builtin"},
      {"--density-file", "density_file"},
      {"--mode", "mode"},
      {"--eps", "eps"},
      {"--Ln", "Ln"},
      {"--Ln-mult", "Ln_mult"},
      {"--M", "M"},
      {"--trials", "trials"},
      {"--seed", "seed"},
      {"--out", "out"},
      {"--alpha", "alpha"},
      {"--C", "C"},
      {"--D", "D"},
      {"--a-exp", "a_exp"},
      {"--dist", "dist"},
  };
  for (const auto& [flag, key] : kFlags) {
    cmd->add_option_function<std::string>(
        flag,
        [&fv, key = key](const std::string& v) {
          fv.overrides.emplace_back(key, v);
        },
        "sets config key " + key);
  }
}

ExperimentConfig build_config(const FlagValues& fv, const std::string& sub,
                              std::ostream& err) {
  std::vector<std::string> warnings;
  ExperimentConfig cfg = load_config(fv.config_path, fv.overrides, &warnings);
  for (const std::string& w : validate_config(cfg, sub)) warnings.push_back(w);
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  return cfg;
}

int cmd_sample(const FlagValues& fv, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = build_config(fv, "sample", err);
  RandomStream rng(cfg.seed);
  const PointSet pts = sample_points(cfg.n(), cfg.load_density(), rng);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  const std::string path =
      (fs::path(cfg.out) / ("sample-" + std::to_string(cfg.seed) + ".csv"))
          .string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot write " + path);
  f << "index,x,y\n";
  for (int i = 1; i <= pts.n(); ++i)
    f << i << "," << format_double(pts.at(i).x) << ","
      << format_double(pts.at(i).y) << "\n";
  const std::string json_path =
      (fs::path(cfg.out) / ("sample-" + std::to_string(cfg.seed) + ".summary.json"))
          .string();
  std::ofstream js(json_path, std::ios::binary);
  js << "{\n  \"experiment\": \"sample\",\n  \"n\": " << pts.n()
     << ",\n  \"seed\": " << cfg.seed << "\n}\n";
  out << path << "\n" << json_path << "\n";
  return 0;
}

int cmd_experiment(const FlagValues& fv, const std::string& sub,
                   std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = build_config(fv, sub, err);
  ExperimentResult res;
  if (sub == "distance") {
    res = run_distance_experiment(cfg);
  } else if (sub == "length") {
    res = run_length_experiment(cfg);
  } else if (sub == "weight") {
    res = run_weight_experiment(cfg);
  } else if (sub == "rgg-stats") {
    res = run_rgg_stats(cfg);
  } else if (sub == "trend") {
    std::vector<ExperimentConfig> cfgs;
    for (long nv : cfg.n_values) {
      ExperimentConfig c = cfg;
      c.n_values = {nv};
      cfgs.push_back(std::move(c));
    }
    res = run_trend_experiment(cfgs);
  }
  const auto [csv_path, json_path] = write_outputs(res, cfg, sub);
  out << csv_path << "\n" << json_path << "\n";
  return 0;
}

int cmd_bounds(const FlagValues& fv, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = build_config(fv, "bounds", err);
  if (cfg.n_values.size() != 1) throw config_error("bounds needs --n");
  const double n = static_cast<double>(cfg.n());
  const double r = cfg.r_for(cfg.n());
  if (!(r > 0.0)) throw config_error("bounds needs an adjacency distance");
  out << "stretch_tail_fail=" << format_double(stretch_tail_bound(n, r, cfg.D_const))
      << "\n";
  if (cfg.dist_d > 0.0) {
    const TwoPointBound tp = two_point_tail_bound(n, r, cfg.dist_d, cfg.D_const);
    out << "two_point_tail_fail=" << format_double(tp.value) << "\n";
    out << "two_point_specialization_applies="
        << (tp.specialization_applies ? 1 : 0) << "\n";
    out << "two_point_specialized_fail=" << format_double(tp.specialized_value)
        << "\n";
  }
  const TailBounds t =
      tail_bound_calculators(n, r, cfg.C_const, cfg.D_const, cfg.a_exp);
  out << "ratio_sandwich_fail=" << format_double(t.ratio_sandwich_fail) << "\n";
  out << "additive_sandwich_fail=" << format_double(t.additive_sandwich_fail) << "\n";
  out << "weight_band_fail=" << format_double(t.weight_band_fail) << "\n";
  out << "C_nonvacuous=" << format_double(smallest_nonvacuous_constant(n * r * r))
      << "\n";
  out << "D_nonvacuous="
      << format_double(smallest_nonvacuous_constant(n * r * r * r * r)) << "\n";
  return 0;
}

int cmd_validate_gamma(const FlagValues& fv, std::ostream& out,
                       std::ostream& err) {
  const ExperimentConfig cfg = build_config(fv, "validate-gamma", err);
  const DetGraph g = cfg.load_gamma();
  out << "v0=" << g.v0() << "\n";
  out << "e0=" << g.e0() << "\n";
  out << "l0=" << format_double(g.l0) << "\n";
  out << "l_up=" << format_double(g.l_up) << "\n";
  out << "l_tot=" << format_double(g.l_tot) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"relay random geometric graph constructions and experiments"};
  app.require_subcommand(1);
  FlagValues fv;
  const std::vector<std::string> subs = {"sample",  "rgg-stats", "distance",
                                         "length",  "weight",    "trend",
                                         "bounds",  "validate-gamma"};
  for (const std::string& s : subs) add_common_flags(app.add_subcommand(s), fv);

  // CLI11 parses back-to-front; hand it a reversed copy.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "sample") return cmd_sample(fv, std::cout, std::cerr);
    if (sub == "bounds") return cmd_bounds(fv, std::cout, std::cerr);
    if (sub == "validate-gamma")
      return cmd_validate_gamma(fv, std::cout, std::cerr);
    return cmd_experiment(fv, sub, std::cout, std::cerr);
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int parse_and_dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace relay_rgg
