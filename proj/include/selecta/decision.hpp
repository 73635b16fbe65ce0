#pragma once

#include <string_view>

#include "selecta/stats_core.hpp"

namespace selecta {

/// Everything needed to analyze a completed two-arm trial.
struct DecisionInputs {
  BetaParams prior_a;
  BetaParams prior_b;
  ArmData data_a;
  ArmData data_b;
  double d = 0.0;      ///< clinically meaningful difference, [0, 1)
  double rho = 0.5;    ///< weight on the ambiguous region, [0, 1]
  double theta = 0.9;  ///< decision threshold, (0, 1)

  void validate() const;

  friend bool operator==(const DecisionInputs&, const DecisionInputs&) = default;
};

enum class Decision { SelectA, ConsiderOtherFactors };

std::string_view to_string(Decision d) noexcept;

struct DecisionReport {
  double p_correct = 0.0;    ///< Pr[pi_A - pi_B > d]
  double p_ambiguous = 0.0;  ///< Pr[-d <= pi_A - pi_B <= d]
  double p_below = 0.0;      ///< Pr[pi_A - pi_B < -d]
  double lambda_star = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  Decision decision = Decision::ConsiderOtherFactors;
  BetaParams posterior_a;
  BetaParams posterior_b;

  friend bool operator==(const DecisionReport&, const DecisionReport&) = default;
};

/// Correct-selection and ambiguity probabilities for one posterior pair. This
/// is the unit of work in every simulation loop.
struct SelectionProbabilities {
  double p_correct = 0.0;
  double p_ambiguous = 0.0;

  double lambda(double rho) const noexcept { return p_correct + rho * p_ambiguous; }
};

/// Pr[pi_A - pi_B > d] for independent Beta posteriors, as
/// integral over [0, 1-d] of (1 - F_A(pi + d)) f_B(pi).
double prob_correct(const BetaParams& post_a, const BetaParams& post_b, double d);

/// Pr[pi_A - pi_B >= -d] = F_B(d) + integral over [d, 1] of (1 - F_A(pi - d)) f_B(pi).
double prob_at_least(const BetaParams& post_a, const BetaParams& post_b, double d);

/// Pr[-d <= pi_A - pi_B <= d] = prob_at_least(d) - prob_correct(d).
double prob_ambiguous(const BetaParams& post_a, const BetaParams& post_b, double d);

/// Pr[pi_A - pi_B < -d], integrated independently of the two above.
double prob_below(const BetaParams& post_a, const BetaParams& post_b, double d);

SelectionProbabilities selection_probabilities(const BetaParams& post_a,
                                               const BetaParams& post_b, double d);

/// lambda* = P*_Corr + rho P*_Amb on the posteriors implied by the inputs.
double lambda_star(const DecisionInputs& inputs);

/// SelectA iff lambda > theta; a tie defers to other factors.
Decision decide(double lambda, double theta);

/// Full pipeline: posteriors, all three probabilities, lambda*, decision. Arm
/// labels follow input order and are never swapped by observed rate.
DecisionReport analyze_trial(const DecisionInputs& inputs);

}  // namespace selecta
