#pragma once

#include <vector>

#include "relay_rgg/errors.hpp"

namespace relay_rgg {

/// Independent Bernoulli trials with per-trial success probabilities.
struct BernoulliSumSpec {
  std::vector<double> p;

  int m() const { return static_cast<int>(p.size()); }
  double mu() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }
};

/// The two-sided tail bound exp(-eps^2 * mu / 4), for 0 < eps <= 1/2.
double chernoff_upper(double mu, double eps);

/// Exact P(|T_m - mu_m| >= eps * mu_m) by convolution over outcome counts.
/// Requires m <= 30.
double exact_two_sided_tail(const BernoulliSumSpec& spec, double eps);

/// exp(-D * n * r_n^2).
double stretch_tail_bound(double n, double r_n, double D);

struct TwoPointBound {
  double value = 0.0;               // (2d/r_n) * exp(-D n r_n^4 / d^2)
  bool specialization_applies = false;  // d <= r_n^2 sqrt(n) / log n
  double specialized_value = 0.0;       // 2 sqrt(2n) * exp(-D (log n)^2)
};

TwoPointBound two_point_tail_bound(double n, double r_n, double d, double D);

struct TailBounds {
  double ratio_sandwich_fail = 0.0;      // exp(-C n r_n^2)
  double additive_sandwich_fail = 0.0;  // exp(-D n r_n^4)
  double weight_band_fail = 0.0;            // 1 / n^(1+a)
  double ratio_sandwich_success = 0.0;
  double additive_sandwich_success = 0.0;
  double weight_band_success = 0.0;
};

/// All constants must be strictly positive.
TailBounds tail_bound_calculators(double n, double r_n, double C,
                                           double D, double a);

/// Smallest constant c with exp(-c * scale) <= 1/2, i.e. ln(2)/scale — the
/// diagnostic "smallest constant making the bound non-vacuous".
double smallest_nonvacuous_constant(double exponent_scale);

}  // namespace relay_rgg
