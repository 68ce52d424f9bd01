#include "relay_rgg/bounds.hpp"

#include <cmath>

namespace relay_rgg {

double chernoff_upper(double mu, double eps) {
  if (!(mu > 0.0)) throw config_error("chernoff_upper: mu must be > 0");
  if (!(eps > 0.0) || eps > 0.5)
    throw config_error("chernoff_upper: eps must be in (0, 1/2]");
  return std::exp(-eps * eps * mu / 4.0);
}

double exact_two_sided_tail(const BernoulliSumSpec& spec, double eps) {
  if (spec.m() > 30)
    throw config_error("exact_two_sided_tail: m must be <= 30");
  if (!(eps > 0.0)) throw config_error("exact_two_sided_tail: eps must be > 0");
  for (double v : spec.p)
    if (!(v > 0.0) || v > 1.0)
      throw config_error("exact_two_sided_tail: probabilities must be in (0, 1]");

  // Convolve counts: dist[k] = P(T = k) after each trial.
  std::vector<double> dist{1.0};
  for (double pv : spec.p) {
    std::vector<double> next(dist.size() + 1, 0.0);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      next[k] += dist[k] * (1.0 - pv);
      next[k + 1] += dist[k] * pv;
    }
    dist = std::move(next);
  }
  const double mu = spec.mu();
  double tail = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k)
    if (std::abs(static_cast<double>(k) - mu) >= eps * mu) tail += dist[k];
  return tail;
}

double stretch_tail_bound(double n, double r_n, double D) {
  if (!(n > 0.0) || !(r_n > 0.0) || !(D > 0.0))
    throw config_error("stretch_tail_bound: inputs must be positive");
  return std::exp(-D * n * r_n * r_n);
}

TwoPointBound two_point_tail_bound(double n, double r_n, double d, double D) {
  if (!(n > 0.0) || !(r_n > 0.0) || !(d > 0.0) || !(D > 0.0))
    throw config_error("two_point_tail_bound: inputs must be positive");
  TwoPointBound out;
  const double r2 = r_n * r_n;
  out.value = (2.0 * d / r_n) * std::exp(-D * n * r2 * r2 / (d * d));
  const double logn = std::log(n);
  out.specialization_applies = logn > 0.0 && d <= r2 * std::sqrt(n) / logn;
  out.specialized_value =
      2.0 * std::sqrt(2.0 * n) * std::exp(-D * logn * logn);
  return out;
}

TailBounds tail_bound_calculators(double n, double r_n, double C,
                                           double D, double a) {
  if (!(n > 0.0) || !(r_n > 0.0))
    throw config_error("tail_bound_calculators: n and r_n must be positive");
  if (!(C > 0.0) || !(D > 0.0) || !(a > 0.0))
    throw config_error("tail_bound_calculators: constants must be > 0");
  TailBounds out;
  const double r2 = r_n * r_n;
  out.ratio_sandwich_fail = std::exp(-C * n * r2);
  out.additive_sandwich_fail = std::exp(-D * n * r2 * r2);
  out.weight_band_fail = std::pow(n, -(1.0 + a));
  out.ratio_sandwich_success = 1.0 - out.ratio_sandwich_fail;
  out.additive_sandwich_success = 1.0 - out.additive_sandwich_fail;
  out.weight_band_success = 1.0 - out.weight_band_fail;
  return out;
}

double smallest_nonvacuous_constant(double exponent_scale) {
  if (!(exponent_scale > 0.0))
    throw config_error("smallest_nonvacuous_constant: scale must be > 0");
  return std::log(2.0) / exponent_scale;
}

}  // namespace relay_rgg
