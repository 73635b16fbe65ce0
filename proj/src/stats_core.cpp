#include "selecta/stats_core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "selecta/errors.hpp"

namespace selecta {

namespace {

constexpr double kCfTolerance = 1e-15;
constexpr int kCfMaxIterations = 500;
constexpr double kCfTiny = 1e-300;

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a+1)/(a+b+2); callers apply the symmetry relation otherwise.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kCfTiny) d = kCfTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kCfTiny) d = kCfTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kCfTiny) c = kCfTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kCfTiny) d = kCfTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kCfTiny) c = kCfTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kCfTolerance) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge (a=" +
                     std::to_string(a) + ", b=" + std::to_string(b) +
                     ", x=" + std::to_string(x) + ")");
}

// exp(a log x + b log(1-x) - log B(a,b))
double beta_front(double a, double b, double x, double log_beta_ab) noexcept {
  return std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta_ab);
}

bool use_direct_fraction(double a, double b, double x) noexcept {
  return x <= (a + 1.0) / (a + b + 2.0);
}

void check_unit(double x, const char* field) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(field, "must lie in [0, 1]");
}

}  // namespace

void BetaParams::validate(const char* field) const {
  const std::string f(field);
  Validator v("Beta parameters");
  v.require(std::isfinite(alpha) && alpha > 0.0, f + ".alpha", "must be finite and > 0");
  v.require(std::isfinite(beta) && beta > 0.0, f + ".beta", "must be finite and > 0");
  v.throw_if_failed();
}

void ArmData::validate(const char* field) const {
  const std::string f(field);
  Validator v("arm data");
  v.require(n >= 0, f + ".n", "must be >= 0");
  v.require(responders >= 0, f + ".responders", "must be >= 0");
  v.require(responders <= n, f + ".responders", "must not exceed n");
  v.throw_if_failed();
}

double log_gamma(double x) noexcept {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_beta(double a, double b) noexcept {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double incomplete_beta(double a, double b, double x, double log_beta_ab) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = beta_front(a, b, x, log_beta_ab);
  if (use_direct_fraction(a, b, x)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_beta_complement(double a, double b, double x, double log_beta_ab) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double front = beta_front(a, b, x, log_beta_ab);
  if (use_direct_fraction(a, b, x)) return 1.0 - front * beta_continued_fraction(a, b, x) / a;
  return front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

BetaDistribution::BetaDistribution(const BetaParams& p) : p_(p) {
  p.validate();
  log_norm_ = log_beta(p.alpha, p.beta);
}

double BetaDistribution::pdf(double x) const noexcept {
  const double a = p_.alpha;
  const double b = p_.beta;
  if (x <= 0.0) {
    if (a > 1.0) return 0.0;
    if (a < 1.0) x = kUnitClamp;
  } else if (x >= 1.0) {
    if (b > 1.0) return 0.0;
    if (b < 1.0) x = 1.0 - kUnitClamp;
  }
  double log_density = -log_norm_;
  // (a-1) log x is taken as 0 when a == 1 so that x == 0 does not yield 0 * -inf.
  if (a != 1.0) log_density += (a - 1.0) * std::log(x);
  if (b != 1.0) log_density += (b - 1.0) * std::log1p(-x);
  return std::exp(log_density);
}

double BetaDistribution::cdf(double x) const {
  return incomplete_beta(p_.alpha, p_.beta, x, log_norm_);
}

double BetaDistribution::sf(double x) const {
  return incomplete_beta_complement(p_.alpha, p_.beta, x, log_norm_);
}

double beta_cdf(double x, const BetaParams& p) {
  check_unit(x, "x");
  return BetaDistribution(p).cdf(x);
}

double beta_pdf(double x, const BetaParams& p) {
  check_unit(x, "x");
  return BetaDistribution(p).pdf(x);
}

BetaParams posterior_update(const BetaParams& prior, const ArmData& data) {
  prior.validate("prior");
  data.validate("data");
  return {prior.alpha + data.responders, prior.beta + (data.n - data.responders)};
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) noexcept { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace selecta
