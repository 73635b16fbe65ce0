#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

#include "selecta/stats_core.hpp"

namespace selecta {

/// Counter-based random stream. The starting state is a hash of the master
/// seed and a tuple of context integers (replicate index, sample size, arm),
/// and each draw is a SplitMix64 finalization of an incremented counter. Two
/// streams with the same (seed, key) produce identical sequences on every
/// platform, independent of which thread evaluates them or in which order.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }
  result_type next_u64() noexcept;
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double next_uniform() noexcept;
  double next_normal() noexcept;

 private:
  std::uint64_t counter_;
};

/// Arm selector used as the last element of stream keys.
enum class Arm : std::uint64_t { A = 0, B = 1 };

/// Binomial(n, p) draw. Inversion by sequential search for n <= 64 or small
/// means, Hormann's BTRS transformed rejection otherwise. Deterministic given
/// the stream state.
int binomial_sample(RngStream& rng, int n, double p);

/// Gamma(shape, 1) draw by Marsaglia-Tsang squeeze.
double gamma_sample(RngStream& rng, double shape);

/// Beta draw as X / (X + Y) with independent gamma variates.
double beta_sample(RngStream& rng, const BetaParams& p);

}  // namespace selecta
