#pragma once

#include <string_view>

#include "selecta/sample_size.hpp"

namespace selecta {

enum class FreqMethod { Exact, NormalApprox };

std::string_view to_string(FreqMethod m) noexcept;

/// Frequentist selection design on observed-rate differences. Arm A is the
/// assumed-better arm.
struct FreqDesign {
  double pi_a = 0.55;
  double pi_b = 0.40;
  double d = 0.10;
  double rho = 0.5;
  double gamma = 0.8;
  FreqMethod method = FreqMethod::Exact;
  int n_lo = 10;
  int n_hi = 1000;

  void validate() const;

  friend bool operator==(const FreqDesign&, const FreqDesign&) = default;
};

/// Pr[(x_A - x_B)/n > d] by exact double summation.
double p_corr_exact(int n, const FreqDesign& design);
/// Pr[-d <= (x_A - x_B)/n <= d] by exact double summation.
double p_amb_exact(int n, const FreqDesign& design);
/// CLT approximation: Pr[Z > (d - delta)/sd].
double p_corr_normal(int n, const FreqDesign& design);
/// CLT approximation: Phi((d - delta)/sd) - Phi((-d - delta)/sd).
double p_amb_normal(int n, const FreqDesign& design);

/// P_Corr + rho P_Amb by the design's method.
double lambda_freq(int n, const FreqDesign& design);

/// All design quantities at one n.
struct FreqEvaluation {
  int n = 0;
  FreqMethod method = FreqMethod::Exact;
  double p_correct = 0.0;
  double p_ambiguous = 0.0;
  double lambda = 0.0;

  friend bool operator==(const FreqEvaluation&, const FreqEvaluation&) = default;
};

FreqEvaluation evaluate_freq(int n, const FreqDesign& design);

SampleSizeResult min_sample_size_freq(const FreqDesign& design);

}  // namespace selecta
