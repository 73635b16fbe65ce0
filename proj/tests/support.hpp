#pragma once

// Independent oracles shared by the unit tests and the acceptance runner.
// Nothing here calls the quadrature or incomplete-beta code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "selecta/rng.hpp"
#include "selecta/stats_core.hpp"

namespace oracle {

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, long panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0;
  double even = 0.0;
  for (long i = 1; i < panels; ++i) (i % 2 ? odd : even) += f(a + h * static_cast<double>(i));
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Beta density from lgamma directly.
inline double beta_density(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(x) +
                  (b - 1.0) * std::log1p(-x));
}

struct McEstimate {
  double p_correct = 0.0;
  double p_ambiguous = 0.0;
  double p_below = 0.0;
  std::int64_t draws = 0;

  double se(double p) const { return std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(draws)); }
};

/// Monte-Carlo pair sampling of pi_A - pi_B against the band [-d, d].
inline McEstimate mc_difference(const selecta::BetaParams& a, const selecta::BetaParams& b, double d,
                                std::int64_t draws, std::uint64_t seed) {
  selecta::RngStream ra(seed, {1});
  selecta::RngStream rb(seed, {2});
  std::int64_t c = 0;
  std::int64_t amb = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const double diff = selecta::beta_sample(ra, a) - selecta::beta_sample(rb, b);
    if (diff > d) ++c;
    else if (diff >= -d) ++amb;
  }
  McEstimate e;
  e.draws = draws;
  e.p_correct = static_cast<double>(c) / static_cast<double>(draws);
  e.p_ambiguous = static_cast<double>(amb) / static_cast<double>(draws);
  e.p_below = 1.0 - e.p_correct - e.p_ambiguous;
  return e;
}

/// Binomial pmf by direct products (no log-gamma), fine for n <= 60.
inline double binom_pmf_direct(int n, int k, double p) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

/// Brute-force frequentist partition: enumerates every Bernoulli outcome
/// vector of both arms (2^(2n) patterns).
struct Partition {
  double correct = 0.0;
  double ambiguous = 0.0;
  double below = 0.0;
};

inline Partition brute_force_partition(int n, double pa, double pb, double d) {
  Partition out;
  const std::uint32_t patterns = 1u << n;
  for (std::uint32_t ua = 0; ua < patterns; ++ua) {
    const int xa = __builtin_popcount(ua);
    const double wa = std::pow(pa, xa) * std::pow(1.0 - pa, n - xa);
    for (std::uint32_t ub = 0; ub < patterns; ++ub) {
      const int xb = __builtin_popcount(ub);
      const double w = wa * std::pow(pb, xb) * std::pow(1.0 - pb, n - xb);
      // Integer comparison: (xa - xb)/n vs d  <=>  (xa - xb) vs d*n, rounded
      // to the nearest lattice point to keep exact boundary cases exact.
      const double diff_n = static_cast<double>(xa - xb);
      const double edge = d * n;
      const double edge_r = std::round(edge);
      const bool on_grid = std::fabs(edge - edge_r) < 1e-9;
      const double e = on_grid ? edge_r : edge;
      if (diff_n > e) out.correct += w;
      else if (diff_n < -e) out.below += w;
      else out.ambiguous += w;
    }
  }
  return out;
}

/// Standard normal upper quantile by bisection on erfc.
inline double normal_upper_quantile(double p) {
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(mid / std::sqrt(2.0)) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Wilson-Hilferty approximation to the chi-square upper quantile.
inline double chi_square_upper_quantile(double p, int df) {
  const double z = normal_upper_quantile(p);
  const double k = static_cast<double>(df);
  const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

}  // namespace oracle
