#pragma once

// Data-parallel kernels behind the sample-size, operating-characteristics and
// frequentist modules. Each parallel kernel has a plain serial counterpart
// that follows the textbook loop; the tests hold the two against each other
// and bench/ times them.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selecta/decision.hpp"
#include "selecta/stats_core.hpp"

namespace selecta::kernels {

/// Responder counts of one simulated trial.
struct Outcome {
  int responders_a = 0;
  int responders_b = 0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Priors and margin shared by every replicate of a simulation.
struct PosteriorModel {
  BetaParams prior_a;
  BetaParams prior_b;
  double d = 0.0;
};

/// Draws m replicate outcomes at n patients per arm. Replicate j samples arm
/// A from stream (seed, [stream_n,] j, A) and arm B from (seed, [stream_n,] j, B);
/// stream_n is included in the key when present.
std::vector<Outcome> draw_outcomes(int n, double pi_a, double pi_b, std::int64_t m,
                                   std::uint64_t seed, std::optional<int> stream_n);
std::vector<Outcome> draw_outcomes_serial(int n, double pi_a, double pi_b, std::int64_t m,
                                          std::uint64_t seed, std::optional<int> stream_n);

/// First and second moments of (P*_Corr, P*_Amb) accumulated over replicates.
/// lambda_j = c_j + rho a_j is linear in rho, so one pass serves every rho.
struct ReplicateMoments {
  std::int64_t m = 0;
  double sum_c = 0.0;
  double sum_a = 0.0;
  double sum_cc = 0.0;
  double sum_ca = 0.0;
  double sum_aa = 0.0;

  void add(const SelectionProbabilities& p, std::int64_t weight) noexcept;
  double mean_p_correct() const noexcept;
  double mean_p_ambiguous() const noexcept;
  double mean_lambda(double rho) const noexcept;
  /// Monte-Carlo standard error of mean_lambda(rho).
  double standard_error(double rho) const noexcept;
};

/// Evaluates each distinct outcome once (in parallel) and reduces in a fixed
/// outcome order, so the result is bit-identical for any thread count.
ReplicateMoments replicate_moments(const PosteriorModel& model, int n,
                                   std::span<const Outcome> outcomes);
/// Reference: evaluates every replicate directly and sums in replicate order.
ReplicateMoments replicate_moments_serial(const PosteriorModel& model, int n,
                                          std::span<const Outcome> outcomes);

/// Number of replicates with lambda_j > theta.
std::int64_t count_selections(const PosteriorModel& model, int n, double rho, double theta,
                              std::span<const Outcome> outcomes);
std::int64_t count_selections_serial(const PosteriorModel& model, int n, double rho,
                                     double theta, std::span<const Outcome> outcomes);

/// Outcome-space partition of the observed difference (x_A - x_B)/n relative
/// to the closed band [-d, d], with x_i ~ Binomial(n, pi_i) independent.
struct BinomialPartition {
  double p_correct = 0.0;    ///< (x_A - x_B)/n > d
  double p_ambiguous = 0.0;  ///< -d <= (x_A - x_B)/n <= d
  double p_below = 0.0;      ///< (x_A - x_B)/n < -d
};

/// Absolute slack applied at the band edges so lattice points that lie on
/// +-d in exact arithmetic classify as ambiguous.
inline constexpr double kBandEpsilon = 1e-12;

/// Exact double sum with log-space pmfs, rows summed in parallel.
BinomialPartition binomial_partition(int n, double pi_a, double pi_b, double d);
/// Reference: one log-space pmf product per term, plain double loop.
BinomialPartition binomial_partition_serial(int n, double pi_a, double pi_b, double d);

/// log Binomial(n, p) pmf at x, with p in {0, 1} handled exactly.
double binomial_log_pmf(int n, int x, double p) noexcept;

}  // namespace selecta::kernels
