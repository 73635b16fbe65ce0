#pragma once

#include <compare>

namespace selecta {

/// Shape pair of a Beta distribution. Priors and posteriors both live here;
/// alpha counts pseudo-responders and beta pseudo-non-responders.
struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const noexcept { return alpha / (alpha + beta); }
  double variance() const noexcept {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
  }
  double effective_sample_size() const noexcept { return alpha + beta; }

  /// Throws DomainError unless both shapes are finite and positive.
  void validate(const char* field = "beta_params") const;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

/// Observed data for one arm: n patients, `responders` of whom responded.
struct ArmData {
  int n = 0;
  int responders = 0;

  void validate(const char* field = "data") const;

  friend bool operator==(const ArmData&, const ArmData&) = default;
};

/// Endpoint clamp used for densities with a shape below one and for
/// quadrature limits on the unit interval.
inline constexpr double kUnitClamp = 1e-12;

/// Thread-safe log-gamma (glibc's lgamma writes the global signgam).
double log_gamma(double x) noexcept;
double log_beta(double a, double b) noexcept;

/// Regularized incomplete beta I_x(a, b) by continued fraction (modified
/// Lentz), switching to 1 - I_{1-x}(b, a) above x = (a+1)/(a+b+2).
/// `log_beta_ab` must equal log B(a, b). No argument checking.
double incomplete_beta(double a, double b, double x, double log_beta_ab);
/// Complement 1 - I_x(a, b), evaluated without cancellation in the upper tail.
double incomplete_beta_complement(double a, double b, double x, double log_beta_ab);

/// Beta distribution with its normalizing constant cached. The hot loops of
/// the posterior integrals evaluate thousands of densities per call, so the
/// log-beta term is computed once here rather than per evaluation.
class BetaDistribution {
 public:
  explicit BetaDistribution(const BetaParams& p);

  const BetaParams& params() const noexcept { return p_; }

  /// Density; endpoints with a shape below one are evaluated at the clamp.
  double pdf(double x) const noexcept;
  double cdf(double x) const;
  /// Survival function 1 - F(x).
  double sf(double x) const;

 private:
  BetaParams p_;
  double log_norm_;
};

/// F(x; alpha, beta). Domain error for x outside [0,1] or invalid shapes.
double beta_cdf(double x, const BetaParams& p);
/// f(x; alpha, beta). Domain error as for beta_cdf.
double beta_pdf(double x, const BetaParams& p);

/// Conjugate update: Beta(alpha + S, beta + n - S).
BetaParams posterior_update(const BetaParams& prior, const ArmData& data);

/// Standard normal CDF and upper tail.
double normal_cdf(double z) noexcept;
double normal_sf(double z) noexcept;

}  // namespace selecta
