#include "selecta/rng.hpp"

#include <cmath>
#include <numbers>

#include "selecta/errors.hpp"

namespace selecta {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int binomial_inversion(RngStream& rng, int n, double p) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double pmf = std::pow(q, n);
  double u = rng.next_uniform();
  for (int k = 0; k < n; ++k) {
    if (u <= pmf) return k;
    u -= pmf;
    pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return n;
}

// W. Hormann, "The generation of binomial random variates", JSCS 46 (1993).
// Valid for n * p >= 10 with p <= 1/2.
int binomial_btrs(RngStream& rng, int n, double p) {
  const double q = 1.0 - p;
  const double spq = std::sqrt(n * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const double m = std::floor((n + 1) * p);
  const double h = log_gamma(m + 1.0) + log_gamma(n - m + 1.0);
  for (;;) {
    const double u = rng.next_uniform() - 0.5;
    double v = rng.next_uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + c);
    if (k < 0.0 || k > n) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<int>(k);
    v = std::log(v * alpha / (a / (us * us) + b));
    const double bound = h - log_gamma(k + 1.0) - log_gamma(n - k + 1.0) + (k - m) * lpq;
    if (v <= bound) return static_cast<int>(k);
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  std::uint64_t i = 0;
  for (const std::uint64_t k : key) {
    ++i;
    h = mix64(h ^ mix64(k + i * kGolden));
  }
  counter_ = h;
}

std::uint64_t RngStream::next_u64() noexcept {
  counter_ += kGolden;
  return mix64(counter_);
}

double RngStream::next_uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() noexcept {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int binomial_sample(RngStream& rng, int n, double p) {
  if (n < 0) throw DomainError("n", "must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p", "must lie in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_sample(rng, n, 1.0 - p);
  if (n <= 64 || n * p < 10.0) return binomial_inversion(rng, n, p);
  return binomial_btrs(rng, n, p);
}

double gamma_sample(RngStream& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("shape", "must be > 0");
  if (shape < 1.0) {
    const double boost = std::pow(rng.next_uniform(), 1.0 / shape);
    return gamma_sample(rng, shape + 1.0) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_sample(RngStream& rng, const BetaParams& p) {
  p.validate();
  const double x = gamma_sample(rng, p.alpha);
  const double y = gamma_sample(rng, p.beta);
  return x / (x + y);
}

}  // namespace selecta
