#include "selecta/freq_sg.hpp"

#include <cmath>

#include "selecta/errors.hpp"
#include "selecta/kernels.hpp"

namespace selecta {

namespace {

constexpr int kFreqBlock = 8;

void check_n(int n) {
  if (n < 1) throw DomainError("n", "must be >= 1");
}

void check_rates(const FreqDesign& f) {
  Validator v("frequentist design");
  v.require(f.pi_a >= 0.0 && f.pi_a <= 1.0, "pi_a", "must lie in [0, 1]");
  v.require(f.pi_b >= 0.0 && f.pi_b <= 1.0, "pi_b", "must lie in [0, 1]");
  v.require(f.d >= 0.0 && std::isfinite(f.d), "d", "must be finite and >= 0");
  v.require(f.rho >= 0.0 && f.rho <= 1.0, "rho", "must lie in [0, 1]");
  v.throw_if_failed();
}

double normal_sd(int n, const FreqDesign& f) {
  const double var = (f.pi_a * (1.0 - f.pi_a) + f.pi_b * (1.0 - f.pi_b)) / n;
  if (!(var > 0.0))
    throw DomainError("pi_a", "normal approximation needs a nondegenerate variance");
  return std::sqrt(var);
}

}  // namespace

std::string_view to_string(FreqMethod m) noexcept {
  return m == FreqMethod::Exact ? "exact" : "normal";
}

void FreqDesign::validate() const {
  Validator v("frequentist design");
  v.require(pi_a >= 0.0 && pi_a <= 1.0, "pi_a", "must lie in [0, 1]");
  v.require(pi_b >= 0.0 && pi_b <= 1.0, "pi_b", "must lie in [0, 1]");
  v.require(pi_a > pi_b, "pi_a", "must exceed pi_b (arm A is the assumed-better arm)");
  v.require(d >= 0.0 && std::isfinite(d), "d", "must be finite and >= 0");
  v.require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
  v.require(gamma > 0.0 && gamma < 1.0, "gamma", "must lie in (0, 1)");
  v.require(n_lo >= 1, "n_lo", "must be >= 1");
  v.require(n_hi >= n_lo, "n_hi", "must be >= n_lo");
  v.throw_if_failed();
}

double p_corr_exact(int n, const FreqDesign& f) {
  check_n(n);
  check_rates(f);
  return kernels::binomial_partition(n, f.pi_a, f.pi_b, f.d).p_correct;
}

double p_amb_exact(int n, const FreqDesign& f) {
  check_n(n);
  check_rates(f);
  return kernels::binomial_partition(n, f.pi_a, f.pi_b, f.d).p_ambiguous;
}

double p_corr_normal(int n, const FreqDesign& f) {
  check_n(n);
  check_rates(f);
  const double sd = normal_sd(n, f);
  return normal_sf((f.d - (f.pi_a - f.pi_b)) / sd);
}

double p_amb_normal(int n, const FreqDesign& f) {
  check_n(n);
  check_rates(f);
  const double sd = normal_sd(n, f);
  const double delta = f.pi_a - f.pi_b;
  const double hi = (f.d - delta) / sd;
  const double lo = (-f.d - delta) / sd;
  // Difference of upper tails keeps precision when both limits sit far right.
  return hi > 0.0 ? normal_sf(lo) - normal_sf(hi) : normal_cdf(hi) - normal_cdf(lo);
}

double lambda_freq(int n, const FreqDesign& f) {
  return evaluate_freq(n, f).lambda;
}

FreqEvaluation evaluate_freq(int n, const FreqDesign& f) {
  check_n(n);
  check_rates(f);
  FreqEvaluation e{n, f.method, 0.0, 0.0, 0.0};
  if (f.method == FreqMethod::Exact) {
    const auto part = kernels::binomial_partition(n, f.pi_a, f.pi_b, f.d);
    e.p_correct = part.p_correct;
    e.p_ambiguous = part.p_ambiguous;
  } else {
    e.p_correct = p_corr_normal(n, f);
    e.p_ambiguous = p_amb_normal(n, f);
  }
  e.lambda = e.p_correct + f.rho * e.p_ambiguous;
  return e;
}

SampleSizeResult min_sample_size_freq(const FreqDesign& f) {
  f.validate();
  return scan_always_holds(
      SizingMethod::Frequentist, f.n_lo, f.n_hi, f.gamma,
      [&](int n) { return CurvePoint{n, lambda_freq(n, f), 0.0}; }, kFreqBlock);
}

}  // namespace selecta
