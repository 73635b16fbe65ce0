#include "selecta/sample_size.hpp"

#include <atomic>
#include <cfenv>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "selecta/decision.hpp"
#include "selecta/errors.hpp"
#include "selecta/parallel.hpp"

namespace selecta {

namespace {

constexpr int kDeterministicBlock = 16;

using CacheKey = std::tuple<double, double, double, double, double, double, double,
                            std::int64_t, std::uint64_t, int>;

struct SimulationCache {
  std::mutex mutex;
  std::map<CacheKey, kernels::ReplicateMoments> entries;
  std::atomic<bool> enabled{true};
};

SimulationCache& cache() {
  static SimulationCache instance;
  return instance;
}

CacheKey cache_key(const DesignSpec& s, int n) {
  return {s.prior_a.alpha, s.prior_a.beta, s.prior_b.alpha, s.prior_b.beta, s.pi_tilde_a,
          s.pi_tilde_b,    s.d,            s.m,             s.seed,         n};
}

void check_n(int n) {
  if (n < 1) throw DomainError("n", "must be >= 1");
}

}  // namespace

std::string_view to_string(ResponderRounding r) noexcept {
  return r == ResponderRounding::HalfEven ? "half_even" : "ceiling";
}

std::string_view to_string(SizingMethod m) noexcept {
  switch (m) {
    case SizingMethod::Deterministic: return "deterministic";
    case SizingMethod::Simulated: return "simulated";
    case SizingMethod::Frequentist: return "frequentist";
  }
  return "unknown";
}

void DesignSpec::validate() const {
  Validator v("design");
  v.nested([&] { prior_a.validate("prior_a"); });
  v.nested([&] { prior_b.validate("prior_b"); });
  v.require(pi_tilde_a > 0.0 && pi_tilde_a < 1.0, "pi_tilde_a", "must lie in (0, 1)");
  v.require(pi_tilde_b > 0.0 && pi_tilde_b < 1.0, "pi_tilde_b", "must lie in (0, 1)");
  v.require(pi_tilde_a > pi_tilde_b, "pi_tilde_a",
            "must exceed pi_tilde_b (arm A is the assumed-better arm)");
  v.require(d >= 0.0 && d < 1.0, "d", "must lie in [0, 1)");
  v.require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
  v.require(gamma_star > 0.0 && gamma_star < 1.0, "gamma_star", "must lie in (0, 1)");
  v.require(theta > 0.0 && theta < 1.0, "theta", "must lie in (0, 1)");
  v.require(n_lo >= 1, "n_lo", "must be >= 1");
  v.require(n_hi >= n_lo, "n_hi", "must be >= n_lo");
  v.require(m >= 1, "m", "must be >= 1");
  v.throw_if_failed();
}

int expected_responders(int n, double pi, ResponderRounding rounding) {
  if (n < 0) throw DomainError("n", "must be >= 0");
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainError("pi", "must lie in [0, 1]");
  const double product = std::round(static_cast<double>(n) * pi * 1e12) / 1e12;
  double x = 0.0;
  if (rounding == ResponderRounding::Ceiling) {
    x = std::ceil(product);
  } else {
    const int saved = std::fegetround();
    std::fesetround(FE_TONEAREST);
    x = std::nearbyint(product);
    std::fesetround(saved);
  }
  return std::clamp(static_cast<int>(x), 0, n);
}

double lambda_star_at_n(const DesignSpec& spec, int n) {
  check_n(n);
  const ArmData a{n, expected_responders(n, spec.pi_tilde_a, spec.rounding)};
  const ArmData b{n, expected_responders(n, spec.pi_tilde_b, spec.rounding)};
  return selection_probabilities(posterior_update(spec.prior_a, a),
                                 posterior_update(spec.prior_b, b), spec.d)
      .lambda(spec.rho);
}

kernels::ReplicateMoments simulate_at_n(const DesignSpec& spec, int n) {
  check_n(n);
  if (spec.m < 1) throw DomainError("m", "must be >= 1");
  auto& c = cache();
  const bool use_cache = c.enabled.load();
  const CacheKey key = cache_key(spec, n);
  if (use_cache) {
    std::lock_guard lock(c.mutex);
    if (auto it = c.entries.find(key); it != c.entries.end()) return it->second;
  }
  const auto outcomes =
      kernels::draw_outcomes(n, spec.pi_tilde_a, spec.pi_tilde_b, spec.m, spec.seed, n);
  const kernels::PosteriorModel model{spec.prior_a, spec.prior_b, spec.d};
  const auto moments = kernels::replicate_moments(model, n, outcomes);
  if (use_cache) {
    std::lock_guard lock(c.mutex);
    c.entries.emplace(key, moments);
  }
  return moments;
}

double lambda_bar_at_n(const DesignSpec& spec, int n) {
  return simulate_at_n(spec, n).mean_lambda(spec.rho);
}

SampleSizeResult min_sample_size_deterministic(const DesignSpec& spec) {
  spec.validate();
  return scan_always_holds(
      SizingMethod::Deterministic, spec.n_lo, spec.n_hi, spec.gamma_star,
      [&](int n) { return CurvePoint{n, lambda_star_at_n(spec, n), 0.0}; },
      kDeterministicBlock);
}

SampleSizeResult min_sample_size_simulated(const DesignSpec& spec) {
  spec.validate();
  return scan_always_holds(SizingMethod::Simulated, spec.n_lo, spec.n_hi, spec.gamma_star,
                           [&](int n) {
                             const auto mom = simulate_at_n(spec, n);
                             return CurvePoint{n, mom.mean_lambda(spec.rho),
                                               mom.standard_error(spec.rho)};
                           });
}

std::vector<CurvePoint> lambda_curve(const DesignSpec& spec, int n_from, int n_to,
                                     CurveMethod method) {
  spec.validate();
  Validator v("curve range");
  v.require(n_from >= 1, "n_from", "must be >= 1");
  v.require(n_to >= n_from, "n_to", "must be >= n_from");
  v.throw_if_failed();
  std::vector<CurvePoint> curve(static_cast<std::size_t>(n_to - n_from + 1));
  if (method == CurveMethod::Deterministic) {
    parallel_for(0, static_cast<std::int64_t>(curve.size()), [&](std::int64_t i) {
      const int n = n_from + static_cast<int>(i);
      curve[i] = {n, lambda_star_at_n(spec, n), 0.0};
    });
  } else {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const int n = n_from + static_cast<int>(i);
      const auto mom = simulate_at_n(spec, n);
      curve[i] = {n, mom.mean_lambda(spec.rho), mom.standard_error(spec.rho)};
    }
  }
  return curve;
}

void set_simulation_cache_enabled(bool enabled) noexcept { cache().enabled.store(enabled); }

void clear_simulation_cache() {
  std::lock_guard lock(cache().mutex);
  cache().entries.clear();
}

std::size_t simulation_cache_size() {
  std::lock_guard lock(cache().mutex);
  return cache().entries.size();
}

}  // namespace selecta
