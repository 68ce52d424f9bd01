#include "relay_rgg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include "json.hpp"

namespace relay_rgg {

namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

/// Runs fn(trial) for 0..trials-1 on the resolved worker count. Results must
/// be written into per-trial slots; the first thrown exception (lowest trial
/// index) is rethrown after all workers join.
void parallel_trials(long trials, int workers,
                     const std::function<void(long)>& fn) {
  if (trials <= 0) return;
  workers = static_cast<int>(
      std::max<long>(1, std::min<long>(workers, trials)));
  if (workers == 1) {
    for (long t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::pair<long, std::exception_ptr>> errors(
      static_cast<std::size_t>(workers), {-1, nullptr});
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const long t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = {t, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  long best = -1;
  std::exception_ptr eptr;
  for (auto& [t, e] : errors) {
    if (e && (best == -1 || t < best)) {
      best = t;
      eptr = e;
    }
  }
  if (eptr) std::rethrow_exception(eptr);
}

ordered_json config_echo(const ExperimentConfig& cfg) {
  ordered_json j;
  std::istringstream ss(serialize_config(cfg));
  std::string line;
  while (std::getline(ss, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

ordered_json interval_json(const WilsonInterval& w) {
  return ordered_json{{"lo", w.lo}, {"hi", w.hi}};
}

ordered_json flag_json(const FlagStats& f) {
  return ordered_json{{"count", f.count},
                      {"trues", f.trues},
                      {"freq", f.freq},
                      {"wilson95", interval_json(f.interval)}};
}

ordered_json field_json(const FieldStats& f) {
  if (f.count == 0) return ordered_json{{"count", 0}};
  return ordered_json{{"count", f.count}, {"mean", f.mean},
                      {"variance", f.variance}, {"min", f.min},
                      {"max", f.max}};
}

ordered_json summary_to_json(const SummaryStats& s) {
  ordered_json j;
  j["count"] = s.count;
  for (const auto& [name, st] : s.nums) j[name] = field_json(st);
  for (const auto& [name, st] : s.flags) j[name] = flag_json(st);
  return j;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(
      std::min<double>(std::floor(q * static_cast<double>(v.size() - 1) + 0.5),
                       static_cast<double>(v.size() - 1)));
  return v[idx];
}

}  // namespace

WilsonInterval wilson95(long successes, long trials) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nd = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = p + z2 / (2.0 * nd);
  const double spread =
      z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd));
  return {std::max(0.0, (center - spread) / denom),
          std::min(1.0, (center + spread) / denom)};
}

const FieldStats* SummaryStats::num(const std::string& name) const {
  for (const auto& [k, v] : nums)
    if (k == name) return &v;
  return nullptr;
}
const FlagStats* SummaryStats::flag(const std::string& name) const {
  for (const auto& [k, v] : flags)
    if (k == name) return &v;
  return nullptr;
}

SummaryStats summarize(const std::vector<TrialRecord>& records_in) {
  std::vector<const TrialRecord*> records;
  records.reserve(records_in.size());
  for (const auto& r : records_in) records.push_back(&r);
  std::sort(records.begin(), records.end(),
            [](const TrialRecord* a, const TrialRecord* b) {
              return a->index < b->index;
            });
  SummaryStats out;
  out.count = static_cast<long>(records.size());
  if (records.empty()) return out;
  const std::string& kind = records.front()->kind;
  for (const TrialRecord* r : records)
    if (r->kind != kind) throw config_error("summarize: mixed record kinds");

  for (std::size_t c = 0; c < records.front()->cells.size(); ++c) {
    const std::string& name = records.front()->cells[c].first;
    const CellValue& first = records.front()->cells[c].second;
    if (std::holds_alternative<bool>(first)) {
      FlagStats fs;
      for (const TrialRecord* r : records) {
        fs.count++;
        if (std::get<bool>(r->cells[c].second)) fs.trues++;
      }
      fs.freq = fs.count ? static_cast<double>(fs.trues) / fs.count : 0.0;
      fs.interval = wilson95(fs.trues, fs.count);
      out.flags.emplace_back(name, fs);
    } else {
      FieldStats st;
      double sum = 0.0, sumsq = 0.0;
      for (const TrialRecord* r : records) {
        const CellValue& cv = r->cells[c].second;
        const double v = std::holds_alternative<double>(cv)
                             ? std::get<double>(cv)
                             : static_cast<double>(std::get<long long>(cv));
        if (!std::isfinite(v)) continue;
        if (st.count == 0) {
          st.min = st.max = v;
        } else {
          st.min = std::min(st.min, v);
          st.max = std::max(st.max, v);
        }
        st.count++;
        sum += v;
        sumsq += v * v;
      }
      if (st.count > 0) {
        st.mean = sum / static_cast<double>(st.count);
        st.variance =
            std::max(0.0, sumsq / static_cast<double>(st.count) - st.mean * st.mean);
      }
      out.nums.emplace_back(name, st);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string records_to_csv(const std::vector<TrialRecord>& records_in) {
  std::vector<const TrialRecord*> records;
  records.reserve(records_in.size());
  for (const auto& r : records_in) records.push_back(&r);
  std::sort(records.begin(), records.end(),
            [](const TrialRecord* a, const TrialRecord* b) {
              return a->index < b->index;
            });
  std::string out = "trial";
  if (!records.empty())
    for (const auto& [name, _] : records.front()->cells) out += "," + name;
  out += "\n";
  for (const TrialRecord* r : records) {
    out += std::to_string(r->index);
    for (const auto& [_, cv] : r->cells) {
      out += ",";
      if (std::holds_alternative<bool>(cv)) {
        out += std::get<bool>(cv) ? "1" : "0";
      } else if (std::holds_alternative<long long>(cv)) {
        out += std::to_string(std::get<long long>(cv));
      } else {
        out += format_double(std::get<double>(cv));
      }
    }
    out += "\n";
  }
  return out;
}

int resolve_workers(int requested) {
  int base = requested > 0
                 ? requested
                 : std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("RELAY_RGG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) base = std::min(base, cap);
  }
  return std::max(1, base);
}

namespace {

GLocGraph trial_gloc(const ExperimentConfig& cfg, const DetGraph& gamma,
                     const DensitySpec& density, long n, double r,
                     std::uint64_t config_index, long trial) {
  RandomStream rng(
      trial_stream_seed(cfg.seed, config_index, static_cast<std::uint64_t>(trial),
                        StreamTag::points));
  PointSet pts = sample_points(n, density, rng);
  return build_gloc(build_rgg(std::move(pts), r), gamma);
}

ExperimentResult finish(const ExperimentConfig& cfg,
                        std::vector<TrialRecord> records, ordered_json sidecar) {
  ExperimentResult res;
  res.records = std::move(records);
  res.summary = summarize(res.records);
  res.csv = records_to_csv(res.records);
  sidecar["config"] = config_echo(cfg);
  sidecar["summary"] = summary_to_json(res.summary);
  res.summary_json = sidecar.dump(2) + "\n";
  return res;
}

TrialRecord distance_trial(const ExperimentConfig& cfg, const DetGraph& gamma,
                           const DensitySpec& density, long n, double r,
                           std::uint64_t config_index, long trial) {
  const auto t0 = std::chrono::steady_clock::now();
  const GLocGraph g = trial_gloc(cfg, gamma, density, n, r, config_index, trial);
  const auto [u, v] = gamma.edges.front();
  const DistanceEventOutcome ev = check_distance_events(g, u, v, cfg.eps);
  TrialRecord rec;
  rec.kind = "distance";
  rec.index = static_cast<int>(trial);
  rec.cells = {
      {"d_gr", static_cast<long long>(ev.d_gr ? *ev.d_gr : -1)},
      {"d_euclid", ev.d_euclid},
      {"d_uv", static_cast<long long>(ev.d_uv)},
      {"e_uv", ev.e_uv},
      {"f_uv", ev.f_uv},
  };
  rec.wall_ms = elapsed_ms(t0);
  return rec;
}

}  // namespace

ExperimentResult run_distance_experiment(const ExperimentConfig& cfg,
                                         int workers) {
  validate_config(cfg, "distance");
  const DetGraph gamma = cfg.load_gamma();
  const DensitySpec density = cfg.load_density();
  const long n = cfg.n();
  const double r = cfg.r_for(n);
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, resolve_workers(workers), [&](long t) {
    records[static_cast<std::size_t>(t)] =
        distance_trial(cfg, gamma, density, n, r, 0, t);
  });

  const auto [u, v] = gamma.edges.front();
  const double d = dist(gamma.vertex(u), gamma.vertex(v));
  const TwoPointBound tp =
      two_point_tail_bound(static_cast<double>(n), r, d, cfg.D_const);
  ordered_json side;
  side["experiment"] = "distance";
  side["pair"] = {{"u", u}, {"v", v}, {"d", d}, {"d_uv", two_point_target(d, r)}};
  side["r_n"] = r;
  side["bounds"] = {
      {"stretch_tail_fail", stretch_tail_bound(static_cast<double>(n), r,
                                               cfg.D_const)},
      {"two_point_tail_fail", tp.value},
      {"two_point_specialization_applies", tp.specialization_applies},
      {"two_point_specialized_fail", tp.specialized_value},
      {"D_nonvacuous_ratio",
       smallest_nonvacuous_constant(static_cast<double>(n) * r * r)},
      {"D_nonvacuous_two_point",
       std::max(0.0, std::log(4.0 * d / r)) * d * d /
           (static_cast<double>(n) * r * r * r * r)},
  };
  return finish(cfg, std::move(records), std::move(side));
}

namespace {

TrialRecord length_trial(const ExperimentConfig& cfg, const DetGraph& gamma,
                         const DensitySpec& density, long n, double r,
                         long trial) {
  const auto t0 = std::chrono::steady_clock::now();
  const GLocGraph g = trial_gloc(cfg, gamma, density, n, r, 0, trial);
  const ChainMode mode = cfg.chain_mode();
  const RelayBuildResult built = build_relay_rgg(g, mode);
  const LengthEstimate est = length_bounds(built, g, mode);
  const bool sandwich =
      is_two_point(mode) ? est.sandwich_two_point : est.sandwich_ratio;
  if (built.ok()) {
    // Conditional-deterministic: the additive sandwich cannot fail on a
    // successful two-point construction.
    if (is_two_point(mode) && !sandwich)
      throw invariant_violation("two-point sandwich failed on success");
    if (est.achieved * r < gamma.l_tot - 1e-9)
      throw invariant_violation("length lower bound violated");
  }
  TrialRecord rec;
  rec.kind = "length";
  rec.index = static_cast<int>(trial);
  rec.cells = {
      {"success", built.ok()},
      {"fail_edge", static_cast<long long>(built.failure.edge_index)},
      {"fail_site", static_cast<long long>(built.failure.site_index)},
      {"fail_reason", static_cast<long long>(built.failure.reason)},
      {"lower", est.lower},
      {"achieved", est.achieved},
      {"ratio", built.ok() ? est.achieved / est.lower : kInf},
      {"sandwich", sandwich},
  };
  rec.wall_ms = elapsed_ms(t0);
  return rec;
}

}  // namespace

ExperimentResult run_length_experiment(const ExperimentConfig& cfg,
                                       int workers) {
  validate_config(cfg, "length");
  const DetGraph gamma = cfg.load_gamma();
  const DensitySpec density = cfg.load_density();
  const long n = cfg.n();
  const double r = cfg.r_for(n);
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, resolve_workers(workers), [&](long t) {
    records[static_cast<std::size_t>(t)] =
        length_trial(cfg, gamma, density, n, r, t);
  });

  // Conditional sandwich rate over successes.
  long succ = 0, sand = 0;
  for (const TrialRecord& rec : records) {
    bool s = false, sw = false;
    for (const auto& [k, cv] : rec.cells) {
      if (k == "success") s = std::get<bool>(cv);
      if (k == "sandwich") sw = std::get<bool>(cv);
    }
    succ += s;
    sand += (s && sw);
  }
  const TailBounds tails = tail_bound_calculators(
      static_cast<double>(n), r, cfg.C_const, cfg.D_const, cfg.a_exp);
  ordered_json side;
  side["experiment"] = "length";
  side["r_n"] = r;
  side["lower"] = gamma.l_tot / r;
  {
    ordered_json targets = ordered_json::array();
    for (double l : gamma.edge_len) targets.push_back(two_point_target(l, r));
    side["per_edge_targets"] = targets;
  }
  side["successes"] = succ;
  side["sandwich_given_success"] =
      succ > 0 ? ordered_json(static_cast<double>(sand) / succ)
               : ordered_json(nullptr);
  side["bounds"] = {
      {"ratio_sandwich_fail", tails.ratio_sandwich_fail},
      {"additive_sandwich_fail", tails.additive_sandwich_fail},
      {"C_nonvacuous",
       smallest_nonvacuous_constant(static_cast<double>(n) * r * r)},
      {"D_nonvacuous",
       smallest_nonvacuous_constant(static_cast<double>(n) * r * r * r * r)},
  };
  return finish(cfg, std::move(records), std::move(side));
}

namespace {

TrialRecord weight_trial(const ExperimentConfig& cfg, const DetGraph& gamma,
                         const DensitySpec& density, long n, double r, long Ln,
                         long trial) {
  const auto t0 = std::chrono::steady_clock::now();
  const GLocGraph g = trial_gloc(cfg, gamma, density, n, r, 0, trial);
  const WeightAssignment w(trial_stream_seed(
      cfg.seed, 0, static_cast<std::uint64_t>(trial), StreamTag::weights));
  const MaxWeightBuildResult built = build_max_weight_relay_rgg(g, w, Ln);
  const EupResult eup = check_eup(g, w, cfg.M);
  const WeightEstimate est =
      make_weight_estimate(gamma.e0(), Ln, n, cfg.M,
                           built.ok() ? built.total_weight : kInf, eup.holds);
  if (built.ok() && est.eup_holds &&
      est.lower_achieved > est.upper_cert + 1e-9)
    throw invariant_violation("constructed weight exceeds the E_up certificate");

  long long hops = -1;
  double min_hop = kInf;
  if (built.ok()) {
    hops = built.rgg->total_edges();
    for (const GreedyPathResult& p : built.per_edge)
      min_hop = std::min(min_hop, p.min_hop_weight);
  }
  TrialRecord rec;
  rec.kind = "weight";
  rec.index = static_cast<int>(trial);
  rec.cells = {
      {"success", built.ok()},
      {"fail_edge", static_cast<long long>(built.failure.edge_index)},
      {"fail_site", static_cast<long long>(built.failure.site_index)},
      {"fail_reason", static_cast<long long>(built.failure.reason)},
      {"total_weight", est.lower_achieved},
      {"ratio", est.lower_achieved / est.delta_n},
      {"min_hop_weight", min_hop},
      {"min_hop_over_logn",
       min_hop / std::log(static_cast<double>(std::max(n, 2L)))},
      {"hops_total", hops},
      {"eup", eup.holds},
      {"max_edge_weight", eup.max_weight},
  };
  rec.wall_ms = elapsed_ms(t0);
  return rec;
}

}  // namespace

ExperimentResult run_weight_experiment(const ExperimentConfig& cfg,
                                       int workers) {
  validate_config(cfg, "weight");
  const DetGraph gamma = cfg.load_gamma();
  const DensitySpec density = cfg.load_density();
  const long n = cfg.n();
  const double r = cfg.r_for(n);
  const long Ln = cfg.resolve_Ln(gamma, r);
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, resolve_workers(workers), [&](long t) {
    records[static_cast<std::size_t>(t)] =
        weight_trial(cfg, gamma, density, n, r, Ln, t);
  });

  std::vector<double> ratios;
  for (const TrialRecord& rec : records)
    for (const auto& [k, cv] : rec.cells)
      if (k == "ratio" && std::isfinite(std::get<double>(cv)))
        ratios.push_back(std::get<double>(cv));
  const double logn = std::log(static_cast<double>(std::max(n, 2L)));
  const double delta_n = static_cast<double>(gamma.e0()) *
                         static_cast<double>(Ln) * logn;
  ordered_json side;
  side["experiment"] = "weight";
  side["r_n"] = r;
  side["L_n"] = Ln;
  side["delta_n"] = delta_n;
  side["upper_cert"] = delta_n * cfg.M;
  side["upper_cert_over_delta_n"] = cfg.M;
  side["hop_floor"] = (Ln + 15) / 16;
  if (!ratios.empty()) {
    double mean = 0.0;
    for (double v : ratios) mean += v;
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (double v : ratios) var += (v - mean) * (v - mean);
    var /= static_cast<double>(ratios.size());
    side["ratio_band"] = {{"q05", quantile(ratios, 0.05)},
                          {"q95", quantile(ratios, 0.95)},
                          {"cv", mean > 0.0 ? std::sqrt(var) / mean : 0.0}};
  } else {
    side["ratio_band"] = nullptr;
  }
  side["bounds"] = {
      {"weight_band_fail", std::pow(static_cast<double>(n), -(1.0 + cfg.a_exp))}};
  return finish(cfg, std::move(records), std::move(side));
}

ExperimentResult run_rgg_stats(const ExperimentConfig& cfg, int workers) {
  validate_config(cfg, "rgg-stats");
  const DensitySpec density = cfg.load_density();
  const long n = cfg.n();
  const double r = cfg.r_for(n);
  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, resolve_workers(workers), [&](long t) {
    const auto t0 = std::chrono::steady_clock::now();
    RandomStream rng(trial_stream_seed(cfg.seed, 0,
                                       static_cast<std::uint64_t>(t),
                                       StreamTag::points));
    const RggInstance g = build_rgg(sample_points(n, density, rng), r);
    long long edges = 0, isolated = 0;
    long long min_deg = n > 0 ? n : 0, max_deg = 0;
    for (int i = 1; i <= g.points.n(); ++i) {
      long long deg = 0;
      g.index.for_each_within(g.points, g.points.at(i), g.r_n, [&](int j) {
        if (j != i) ++deg;
      });
      edges += deg;
      min_deg = std::min(min_deg, deg);
      max_deg = std::max(max_deg, deg);
      if (deg == 0) ++isolated;
    }
    edges /= 2;
    TrialRecord rec;
    rec.kind = "rgg-stats";
    rec.index = static_cast<int>(t);
    rec.cells = {
        {"n", static_cast<long long>(n)},
        {"edges", edges},
        {"min_deg", n > 0 ? min_deg : 0},
        {"max_deg", max_deg},
        {"mean_deg", n > 0 ? 2.0 * static_cast<double>(edges) / n : 0.0},
        {"isolated", isolated},
    };
    rec.wall_ms = elapsed_ms(t0);
    records[static_cast<std::size_t>(t)] = rec;
  });
  ordered_json side;
  side["experiment"] = "rgg-stats";
  side["r_n"] = r;
  return finish(cfg, std::move(records), std::move(side));
}

ExperimentResult run_trend_experiment(const std::vector<ExperimentConfig>& cfgs,
                                      int workers) {
  if (cfgs.size() < 2)
    throw config_error("trend needs at least two configurations");
  for (std::size_t i = 0; i + 1 < cfgs.size(); ++i) {
    const double a = static_cast<double>(cfgs[i].n()) *
                     cfgs[i].r_for(cfgs[i].n()) * cfgs[i].r_for(cfgs[i].n());
    const double b = static_cast<double>(cfgs[i + 1].n()) *
                     cfgs[i + 1].r_for(cfgs[i + 1].n()) *
                     cfgs[i + 1].r_for(cfgs[i + 1].n());
    if (b < a)
      throw config_error("trend configs must be ordered by non-decreasing n*r_n^2");
  }

  std::vector<TrialRecord> rows;
  ordered_json per_config = ordered_json::array();
  std::vector<WilsonInterval> f_iv;
  std::vector<double> f_freq;
  for (std::size_t c = 0; c < cfgs.size(); ++c) {
    const ExperimentConfig& cfg = cfgs[c];
    validate_config(cfg, "distance");
    const DetGraph gamma = cfg.load_gamma();
    const DensitySpec density = cfg.load_density();
    const long n = cfg.n();
    const double r = cfg.r_for(n);
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
    parallel_trials(cfg.trials, resolve_workers(workers), [&](long t) {
      records[static_cast<std::size_t>(t)] = distance_trial(
          cfg, gamma, density, n, r, static_cast<std::uint64_t>(c) + 1, t);
    });
    const SummaryStats s = summarize(records);
    const FlagStats* f = s.flag("f_uv");
    const FlagStats* e = s.flag("e_uv");
    const FlagStats zero{};
    if (!f) f = &zero;
    if (!e) e = &zero;
    f_iv.push_back(f->interval);
    f_freq.push_back(f->freq);
    TrialRecord rec;
    rec.kind = "trend";
    rec.index = static_cast<int>(c);
    rec.cells = {
        {"n", static_cast<long long>(n)},
        {"rn", r},
        {"n_rn2", static_cast<double>(n) * r * r},
        {"trials", static_cast<long long>(cfg.trials)},
        {"f_uv_freq", f->freq},
        {"f_uv_lo", f->interval.lo},
        {"f_uv_hi", f->interval.hi},
        {"e_uv_freq", e->freq},
        {"e_uv_lo", e->interval.lo},
        {"e_uv_hi", e->interval.hi},
    };
    rows.push_back(rec);
    per_config.push_back(ordered_json{{"n", n},
                                      {"rn", r},
                                      {"f_uv_freq", f->freq},
                                      {"f_uv_wilson", interval_json(f->interval)},
                                      {"e_uv_freq", e->freq},
                                      {"e_uv_wilson", interval_json(e->interval)}});
  }

  bool non_decreasing = true;
  for (std::size_t i = 0; i + 1 < f_freq.size(); ++i) {
    const bool up = f_freq[i + 1] >= f_freq[i];
    const bool overlap = std::max(f_iv[i].lo, f_iv[i + 1].lo) <=
                         std::min(f_iv[i].hi, f_iv[i + 1].hi) + 1e-15;
    if (!up && !overlap) non_decreasing = false;
  }
  ordered_json side;
  side["experiment"] = "trend";
  side["configs"] = per_config;
  side["f_uv_non_decreasing_within_ci"] = non_decreasing;
  return finish(cfgs.front(), std::move(rows), std::move(side));
}

std::pair<std::string, std::string> write_outputs(const ExperimentResult& res,
                                                  const ExperimentConfig& cfg,
                                                  const std::string& subcommand) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  const std::string base =
      (fs::path(cfg.out) / (subcommand + "-" + std::to_string(cfg.seed)))
          .string();
  const std::string csv_path = base + ".csv";
  const std::string json_path = base + ".summary.json";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw config_error("cannot write " + csv_path);
  csv << res.csv;
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw config_error("cannot write " + json_path);
  js << res.summary_json;
  return {csv_path, json_path};
}

}  // namespace relay_rgg
