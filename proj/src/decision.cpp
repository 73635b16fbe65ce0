#include "selecta/decision.hpp"

#include <algorithm>
#include <cmath>

#include "selecta/errors.hpp"
#include "selecta/quadrature.hpp"

namespace selecta {

namespace {

constexpr double kBulkWidthSd = 12.0;

void check_margin(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError("d", "must lie in [0, 1]");
}

// Integrates h(p) * w.pdf(p) over [lo, hi]. The bulk of w (mean +- 12 sd)
// is integrated on its own so the adaptive rule finds the peak. A tail piece
// next to an endpoint where w is unbounded (shape below one) is integrated
// after p = t^(1/alpha), or 1 - p = s^(1/beta), which cancels the power
// singularity exactly.
template <class H>
double integrate_weighted(H&& h, double lo, double hi, const BetaDistribution& w) {
  if (lo >= hi) return 0.0;
  const BetaParams& wp = w.params();
  auto f = [&](double p) { return h(p) * w.pdf(p); };
  const bool sing_lo = wp.alpha < 1.0;
  const bool sing_hi = wp.beta < 1.0;
  const double sd = std::sqrt(wp.variance());
  double a = std::max(lo, wp.mean() - kBulkWidthSd * sd);
  double b = std::min(hi, wp.mean() + kBulkWidthSd * sd);
  if (a >= b && !sing_lo && !sing_hi) return integrate(f, lo, hi);
  if (a >= b) a = b = std::clamp(wp.mean(), lo, hi);
  if (sing_lo && a <= lo) a = std::clamp(wp.mean(), lo, b);
  if (sing_hi && b >= hi) b = std::clamp(wp.mean(), a, hi);

  constexpr double tol = kDefaultQuadTolerance / 3.0;
  const double lb = log_beta(wp.alpha, wp.beta);
  double total = a < b ? integrate(f, a, b, tol) : 0.0;
  if (lo < a) {
    if (sing_lo) {
      // dp * p^(alpha-1) = dt / alpha
      const double c = std::exp(-lb) / wp.alpha;
      auto g = [&](double t) {
        const double p = std::pow(t, 1.0 / wp.alpha);
        return h(p) * c * std::pow(1.0 - p, wp.beta - 1.0);
      };
      total += integrate(g, std::pow(lo, wp.alpha), std::pow(a, wp.alpha), tol);
    } else {
      total += integrate(f, lo, a, tol);
    }
  }
  if (b < hi) {
    if (sing_hi) {
      const double c = std::exp(-lb) / wp.beta;
      auto g = [&](double s) {
        const double q = std::pow(s, 1.0 / wp.beta);
        return h(1.0 - q) * c * std::pow(1.0 - q, wp.alpha - 1.0);
      };
      total += integrate(g, std::pow(1.0 - hi, wp.beta), std::pow(1.0 - b, wp.beta), tol);
    } else {
      total += integrate(f, b, hi, tol);
    }
  }
  return total;
}

double correct_integral(const BetaDistribution& a, const BetaDistribution& b, double d) {
  if (d >= 1.0) return 0.0;
  return integrate_weighted([&](double p) { return a.sf(p + d); }, 0.0, 1.0 - d, b);
}

double at_least_integral(const BetaDistribution& a, const BetaDistribution& b, double d) {
  if (d >= 1.0) return 1.0;
  const double head = d > 0.0 ? b.cdf(d) : 0.0;
  return head + integrate_weighted([&](double p) { return a.sf(p - d); }, d, 1.0, b);
}

double below_integral(const BetaDistribution& a, const BetaDistribution& b, double d) {
  if (d >= 1.0) return 0.0;
  return integrate_weighted([&](double p) { return a.cdf(p - d); }, d, 1.0, b);
}

}  // namespace

std::string_view to_string(Decision d) noexcept {
  return d == Decision::SelectA ? "select A" : "consider other factors";
}

void DecisionInputs::validate() const {
  Validator v("decision inputs");
  v.nested([&] { prior_a.validate("prior_a"); });
  v.nested([&] { prior_b.validate("prior_b"); });
  v.nested([&] { data_a.validate("data_a"); });
  v.nested([&] { data_b.validate("data_b"); });
  v.require(d >= 0.0 && d < 1.0, "d", "must lie in [0, 1)");
  v.require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
  v.require(theta > 0.0 && theta < 1.0, "theta", "must lie in (0, 1)");
  v.throw_if_failed();
}

double prob_correct(const BetaParams& post_a, const BetaParams& post_b, double d) {
  check_margin(d);
  return correct_integral(BetaDistribution(post_a), BetaDistribution(post_b), d);
}

double prob_at_least(const BetaParams& post_a, const BetaParams& post_b, double d) {
  check_margin(d);
  return at_least_integral(BetaDistribution(post_a), BetaDistribution(post_b), d);
}

double prob_ambiguous(const BetaParams& post_a, const BetaParams& post_b, double d) {
  return selection_probabilities(post_a, post_b, d).p_ambiguous;
}

double prob_below(const BetaParams& post_a, const BetaParams& post_b, double d) {
  check_margin(d);
  return below_integral(BetaDistribution(post_a), BetaDistribution(post_b), d);
}

SelectionProbabilities selection_probabilities(const BetaParams& post_a,
                                               const BetaParams& post_b, double d) {
  check_margin(d);
  const BetaDistribution a(post_a);
  const BetaDistribution b(post_b);
  const double correct = correct_integral(a, b, d);
  if (d == 0.0) return {correct, 0.0};
  const double at_least = at_least_integral(a, b, d);
  return {correct, std::max(0.0, at_least - correct)};
}

double lambda_star(const DecisionInputs& inputs) {
  inputs.validate();
  return selection_probabilities(posterior_update(inputs.prior_a, inputs.data_a),
                                 posterior_update(inputs.prior_b, inputs.data_b), inputs.d)
      .lambda(inputs.rho);
}

Decision decide(double lambda, double theta) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda", "must lie in [0, 1]");
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("theta", "must lie in [0, 1]");
  return lambda > theta ? Decision::SelectA : Decision::ConsiderOtherFactors;
}

DecisionReport analyze_trial(const DecisionInputs& inputs) {
  inputs.validate();
  DecisionReport r;
  r.posterior_a = posterior_update(inputs.prior_a, inputs.data_a);
  r.posterior_b = posterior_update(inputs.prior_b, inputs.data_b);
  const BetaDistribution a(r.posterior_a);
  const BetaDistribution b(r.posterior_b);
  const auto probs = selection_probabilities(r.posterior_a, r.posterior_b, inputs.d);
  r.p_correct = probs.p_correct;
  r.p_ambiguous = probs.p_ambiguous;
  r.p_below = below_integral(a, b, inputs.d);
  r.rho = inputs.rho;
  r.theta = inputs.theta;
  r.lambda_star = std::clamp(probs.lambda(inputs.rho), 0.0, 1.0);
  r.decision = decide(r.lambda_star, inputs.theta);
  return r;
}

}  // namespace selecta
