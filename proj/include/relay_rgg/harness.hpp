#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relay_rgg/bounds.hpp"
#include "relay_rgg/relay.hpp"
#include "relay_rgg/weights.hpp"

namespace relay_rgg {

enum class RRule { explicit_rn, beta_power, scale_sqrt };

/// One experiment's resolved knobs. Loaded from key=value config files plus
/// flag overrides; see config.cpp for the keys.
struct ExperimentConfig {
  std::vector<long> n_values;  // several entries only for trend
  RRule r_rule = RRule::explicit_rn;
  double rn = 0.0;
  double beta = 0.0;      // r_n = n^-beta
  double rn_scale = 0.0;  // r_n = scale * sqrt(log n / n)

  std::string gamma_file;
  std::string gamma_builtin;  // "segment d" | "star k [len]" | "parallel m"
  std::string density_file;

  bool ratio_mode = false;
  double eps = 1.0;

  long Ln = 0;          // explicit hop budget (0 = unset)
  double Ln_mult = 0.0; // L_n = mult * ceil(l_up / r_n)  (0 = unset)
  double M = 3.0;

  long trials = 0;
  std::uint64_t seed = 0;
  std::string out = ".";

  double alpha = 0.5;  // regime-warning exponent for e0 <= n^alpha
  double C_const = 1.0;
  double D_const = 1.0;
  double a_exp = 1.0;
  double dist_d = 0.0;  // pair separation for the bounds calculator

  long n() const;
  double r_for(long n) const;
  long resolve_Ln(const DetGraph& gamma, double r) const;
  DetGraph load_gamma() const;
  DensitySpec load_density() const;
  ChainMode chain_mode() const;
};

/// Parses a key=value config file (empty path allowed) and applies overrides
/// in order; override values win. Duplicate keys warn, unknown keys throw.
ExperimentConfig load_config(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& overrides,
    std::vector<std::string>* warnings);

std::string serialize_config(const ExperimentConfig& cfg);

/// Hard validation for the given subcommand (throws config_error); returns
/// regime warnings, which never fail a run.
std::vector<std::string> validate_config(const ExperimentConfig& cfg,
                                         const std::string& subcommand);

using CellValue = std::variant<long long, double, bool>;

/// One trial's outcomes, reproducible from (master seed, trial index).
/// wall_ms is informational and never serialized.
struct TrialRecord {
  std::string kind;
  int index = 0;
  double wall_ms = 0.0;
  std::vector<std::pair<std::string, CellValue>> cells;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(long successes, long trials);

struct FieldStats {
  long count = 0;  // finite entries only for double fields
  double mean = 0.0;
  double variance = 0.0;  // population variance
  double min = 0.0;
  double max = 0.0;
};

struct FlagStats {
  long count = 0;
  long trues = 0;
  double freq = 0.0;
  WilsonInterval interval;
};

struct SummaryStats {
  long count = 0;
  std::vector<std::pair<std::string, FieldStats>> nums;
  std::vector<std::pair<std::string, FlagStats>> flags;

  const FieldStats* num(const std::string& name) const;
  const FlagStats* flag(const std::string& name) const;
};

/// Deterministic aggregation after sorting by trial index. Double fields are
/// aggregated over their finite entries (a failed trial's inf is skipped).
/// Throws config_error on mixed record kinds.
SummaryStats summarize(const std::vector<TrialRecord>& records);

/// Shortest-round-trip formatting; the one float formatter used in CSV.
std::string format_double(double v);

/// Header "trial,<cells...>" then one row per record, '\n' line ends.
std::string records_to_csv(const std::vector<TrialRecord>& records);

/// Worker resolution: requested <= 0 picks min(hardware, 8); the
/// RELAY_RGG_THREADS env var caps the result. Output bytes never depend on it.
int resolve_workers(int requested);

struct ExperimentResult {
  std::vector<TrialRecord> records;
  SummaryStats summary;
  std::string csv;
  std::string summary_json;
};

ExperimentResult run_distance_experiment(const ExperimentConfig& cfg,
                                         int workers = 0);
ExperimentResult run_length_experiment(const ExperimentConfig& cfg,
                                       int workers = 0);
ExperimentResult run_weight_experiment(const ExperimentConfig& cfg,
                                       int workers = 0);
ExperimentResult run_rgg_stats(const ExperimentConfig& cfg, int workers = 0);

/// Distance experiment across configs ordered by non-decreasing n*r_n^2; one
/// aggregated record per config plus the monotone-within-CI verdict.
ExperimentResult run_trend_experiment(const std::vector<ExperimentConfig>& cfgs,
                                      int workers = 0);

/// Writes <out>/<subcommand>-<seed>.csv and .summary.json; returns the paths.
std::pair<std::string, std::string> write_outputs(const ExperimentResult& res,
                                                  const ExperimentConfig& cfg,
                                                  const std::string& subcommand);

}  // namespace relay_rgg
