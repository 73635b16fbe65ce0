#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "selecta/kernels.hpp"
#include "selecta/stats_core.hpp"

namespace selecta {

/// How the plug-in responder count n * pi is turned into an integer. HalfEven
/// rounds to nearest with ties to even (R's round()); Ceiling always rounds
/// up. Both first round the product to 12 decimals so that products such as
/// 40 * 0.55 are not pushed across an integer by binary representation error.
enum class ResponderRounding { HalfEven, Ceiling };

std::string_view to_string(ResponderRounding r) noexcept;

/// Design configuration for both Bayesian sizing procedures. Arm A is the
/// arm assumed better (pi_tilde_a > pi_tilde_b); allocation is equal.
struct DesignSpec {
  BetaParams prior_a;
  BetaParams prior_b;
  double pi_tilde_a = 0.3;
  double pi_tilde_b = 0.15;
  double d = 0.05;
  double rho = 0.0;
  double gamma_star = 0.9;
  double theta = 0.9;
  int n_lo = 10;
  int n_hi = 1000;
  std::int64_t m = 100000;
  std::uint64_t seed = 20240601;
  ResponderRounding rounding = ResponderRounding::HalfEven;

  void validate() const;

  friend bool operator==(const DesignSpec&, const DesignSpec&) = default;
};

enum class SizingMethod { Deterministic, Simulated, Frequentist };

std::string_view to_string(SizingMethod m) noexcept;

struct CurvePoint {
  int n = 0;
  double value = 0.0;
  /// Monte-Carlo standard error of value; zero for deterministic curves.
  double standard_error = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Outcome of a downward "holds for every larger n" scan over [n_lo, n_hi].
struct SampleSizeResult {
  SizingMethod method = SizingMethod::Deterministic;
  /// Smallest n with value > threshold at every scanned n' >= n; empty when
  /// the criterion already holds at n_lo (under_lower_bound).
  std::optional<int> n_min;
  bool under_lower_bound = false;
  double threshold = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  /// Scanned points in ascending n, from the first failing n (if any) to n_hi.
  std::vector<CurvePoint> curve;

  friend bool operator==(const SampleSizeResult&, const SampleSizeResult&) = default;
};

/// n * pi rounded per `rounding`, never exceeding n.
int expected_responders(int n, double pi, ResponderRounding rounding = ResponderRounding::HalfEven);

/// lambda* with responders fixed at their expected counts.
double lambda_star_at_n(const DesignSpec& spec, int n);

/// Replicate moments behind lambda_bar at n (cached per design, n, m, seed).
kernels::ReplicateMoments simulate_at_n(const DesignSpec& spec, int n);

/// Monte-Carlo mean of lambda*_j over m binomial replicates at n per arm.
/// Replicate j draws from streams (seed, n, j, arm).
double lambda_bar_at_n(const DesignSpec& spec, int n);

SampleSizeResult min_sample_size_deterministic(const DesignSpec& spec);
SampleSizeResult min_sample_size_simulated(const DesignSpec& spec);

enum class CurveMethod { Deterministic, Simulated };

std::vector<CurvePoint> lambda_curve(const DesignSpec& spec, int n_from, int n_to,
                                     CurveMethod method);

/// Shared downward scan: walks n from n_hi to n_lo, stopping at the first n
/// whose value does not exceed `threshold`. Values are requested in blocks,
/// so `evaluate` may be called for a few n below the stopping point.
template <class Eval>
SampleSizeResult scan_always_holds(SizingMethod method, int n_lo, int n_hi, double threshold,
                                   Eval&& evaluate);

/// Replicate-moment cache used by simulate_at_n. Enabled by default.
void set_simulation_cache_enabled(bool enabled) noexcept;
void clear_simulation_cache();
std::size_t simulation_cache_size();

}  // namespace selecta

#include "selecta/detail/scan.hpp"
