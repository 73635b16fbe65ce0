#include "selecta/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selecta/errors.hpp"
#include "selecta/parallel.hpp"
#include "selecta/rng.hpp"

namespace selecta::kernels {

namespace {

RngStream arm_stream(std::uint64_t seed, std::optional<int> stream_n, std::int64_t j, Arm arm) {
  const auto jj = static_cast<std::uint64_t>(j);
  const auto a = static_cast<std::uint64_t>(arm);
  if (stream_n) return RngStream(seed, {static_cast<std::uint64_t>(*stream_n), jj, a});
  return RngStream(seed, {jj, a});
}

Outcome draw_one(int n, double pi_a, double pi_b, std::uint64_t seed,
                 std::optional<int> stream_n, std::int64_t j) {
  RngStream ra = arm_stream(seed, stream_n, j, Arm::A);
  RngStream rb = arm_stream(seed, stream_n, j, Arm::B);
  return {binomial_sample(ra, n, pi_a), binomial_sample(rb, n, pi_b)};
}

void check_outcome(const Outcome& o, int n) {
  if (o.responders_a < 0 || o.responders_a > n || o.responders_b < 0 || o.responders_b > n)
    throw DomainError("outcomes", "responder count outside [0, n]");
}

SelectionProbabilities evaluate(const PosteriorModel& model, int n, const Outcome& o) {
  return selection_probabilities(posterior_update(model.prior_a, {n, o.responders_a}),
                                 posterior_update(model.prior_b, {n, o.responders_b}), model.d);
}

// Distinct outcomes in ascending (S_A, S_B) order with their multiplicities.
struct Tally {
  std::vector<Outcome> outcomes;
  std::vector<std::int64_t> counts;
};

Tally tally(int n, std::span<const Outcome> outcomes) {
  const std::size_t side = static_cast<std::size_t>(n) + 1;
  std::vector<std::int64_t> grid(side * side, 0);
  for (const auto& o : outcomes) {
    check_outcome(o, n);
    ++grid[static_cast<std::size_t>(o.responders_a) * side +
           static_cast<std::size_t>(o.responders_b)];
  }
  Tally t;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0) continue;
    t.outcomes.push_back({static_cast<int>(i / side), static_cast<int>(i % side)});
    t.counts.push_back(grid[i]);
  }
  return t;
}

std::vector<SelectionProbabilities> evaluate_all(const PosteriorModel& model, int n,
                                                 const std::vector<Outcome>& distinct) {
  std::vector<SelectionProbabilities> probs(distinct.size());
  parallel_for(0, static_cast<std::int64_t>(distinct.size()),
               [&](std::int64_t i) { probs[i] = evaluate(model, n, distinct[i]); });
  return probs;
}

std::vector<double> log_factorials(int n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 2; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
  return lf;
}

std::vector<double> pmf_vector(int n, double p, const std::vector<double>& lf) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (p == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (int x = 0; x <= n; ++x) pmf[x] = std::exp(lf[n] - lf[x] - lf[n - x] + x * lp + (n - x) * lq);
  return pmf;
}

enum class Band { Correct, Ambiguous, Below };

Band classify(int xa, int xb, int n, double d) noexcept {
  const double diff = static_cast<double>(xa - xb) / n;
  if (diff > d + kBandEpsilon) return Band::Correct;
  if (diff < -d - kBandEpsilon) return Band::Below;
  return Band::Ambiguous;
}

void check_partition_args(int n, double pi_a, double pi_b, double d) {
  Validator v("binomial partition");
  v.require(n >= 1, "n", "must be >= 1");
  v.require(pi_a >= 0.0 && pi_a <= 1.0, "pi_a", "must lie in [0, 1]");
  v.require(pi_b >= 0.0 && pi_b <= 1.0, "pi_b", "must lie in [0, 1]");
  v.require(d >= 0.0 && std::isfinite(d), "d", "must be finite and >= 0");
  v.throw_if_failed();
}

}  // namespace

std::vector<Outcome> draw_outcomes(int n, double pi_a, double pi_b, std::int64_t m,
                                   std::uint64_t seed, std::optional<int> stream_n) {
  if (m < 0) throw DomainError("m", "must be >= 0");
  std::vector<Outcome> out(static_cast<std::size_t>(m));
  parallel_for_static(0, m, [&](std::int64_t j) {
    out[j] = draw_one(n, pi_a, pi_b, seed, stream_n, j);
  });
  return out;
}

std::vector<Outcome> draw_outcomes_serial(int n, double pi_a, double pi_b, std::int64_t m,
                                          std::uint64_t seed, std::optional<int> stream_n) {
  if (m < 0) throw DomainError("m", "must be >= 0");
  std::vector<Outcome> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) out.push_back(draw_one(n, pi_a, pi_b, seed, stream_n, j));
  return out;
}

void ReplicateMoments::add(const SelectionProbabilities& p, std::int64_t weight) noexcept {
  const double w = static_cast<double>(weight);
  m += weight;
  sum_c += w * p.p_correct;
  sum_a += w * p.p_ambiguous;
  sum_cc += w * p.p_correct * p.p_correct;
  sum_ca += w * p.p_correct * p.p_ambiguous;
  sum_aa += w * p.p_ambiguous * p.p_ambiguous;
}

double ReplicateMoments::mean_p_correct() const noexcept {
  return m > 0 ? sum_c / static_cast<double>(m) : std::numeric_limits<double>::quiet_NaN();
}

double ReplicateMoments::mean_p_ambiguous() const noexcept {
  return m > 0 ? sum_a / static_cast<double>(m) : std::numeric_limits<double>::quiet_NaN();
}

double ReplicateMoments::mean_lambda(double rho) const noexcept {
  return mean_p_correct() + rho * mean_p_ambiguous();
}

double ReplicateMoments::standard_error(double rho) const noexcept {
  if (m < 1) return std::numeric_limits<double>::quiet_NaN();
  const double mm = static_cast<double>(m);
  const double mean = mean_lambda(rho);
  const double second = (sum_cc + 2.0 * rho * sum_ca + rho * rho * sum_aa) / mm;
  const double var = std::max(0.0, second - mean * mean);
  return std::sqrt(var / mm);
}

ReplicateMoments replicate_moments(const PosteriorModel& model, int n,
                                   std::span<const Outcome> outcomes) {
  const Tally t = tally(n, outcomes);
  const auto probs = evaluate_all(model, n, t.outcomes);
  ReplicateMoments acc;
  for (std::size_t i = 0; i < probs.size(); ++i) acc.add(probs[i], t.counts[i]);
  return acc;
}

ReplicateMoments replicate_moments_serial(const PosteriorModel& model, int n,
                                          std::span<const Outcome> outcomes) {
  ReplicateMoments acc;
  for (const auto& o : outcomes) {
    check_outcome(o, n);
    acc.add(evaluate(model, n, o), 1);
  }
  return acc;
}

std::int64_t count_selections(const PosteriorModel& model, int n, double rho, double theta,
                              std::span<const Outcome> outcomes) {
  const Tally t = tally(n, outcomes);
  const auto probs = evaluate_all(model, n, t.outcomes);
  std::int64_t selected = 0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i].lambda(rho) > theta) selected += t.counts[i];
  return selected;
}

std::int64_t count_selections_serial(const PosteriorModel& model, int n, double rho,
                                     double theta, std::span<const Outcome> outcomes) {
  std::int64_t selected = 0;
  for (const auto& o : outcomes) {
    check_outcome(o, n);
    if (evaluate(model, n, o).lambda(rho) > theta) ++selected;
  }
  return selected;
}

double binomial_log_pmf(int n, int x, double p) noexcept {
  if (x < 0 || x > n) return -std::numeric_limits<double>::infinity();
  if (p == 0.0) return x == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p == 1.0) return x == n ? 0.0 : -std::numeric_limits<double>::infinity();
  return log_gamma(n + 1.0) - log_gamma(x + 1.0) - log_gamma(n - x + 1.0) + x * std::log(p) +
         (n - x) * std::log1p(-p);
}

BinomialPartition binomial_partition(int n, double pi_a, double pi_b, double d) {
  check_partition_args(n, pi_a, pi_b, d);
  const auto lf = log_factorials(n);
  const auto pmf_a = pmf_vector(n, pi_a, lf);
  const auto pmf_b = pmf_vector(n, pi_b, lf);
  std::vector<BinomialPartition> rows(static_cast<std::size_t>(n) + 1);
  parallel_for_static(0, n + 1, [&](std::int64_t xa) {
    BinomialPartition row;
    for (int xb = 0; xb <= n; ++xb) {
      switch (classify(static_cast<int>(xa), xb, n, d)) {
        case Band::Correct: row.p_correct += pmf_b[xb]; break;
        case Band::Ambiguous: row.p_ambiguous += pmf_b[xb]; break;
        case Band::Below: row.p_below += pmf_b[xb]; break;
      }
    }
    rows[xa] = {pmf_a[xa] * row.p_correct, pmf_a[xa] * row.p_ambiguous, pmf_a[xa] * row.p_below};
  });
  BinomialPartition total;
  for (const auto& r : rows) {
    total.p_correct += r.p_correct;
    total.p_ambiguous += r.p_ambiguous;
    total.p_below += r.p_below;
  }
  return total;
}

BinomialPartition binomial_partition_serial(int n, double pi_a, double pi_b, double d) {
  check_partition_args(n, pi_a, pi_b, d);
  BinomialPartition total;
  for (int xa = 0; xa <= n; ++xa) {
    for (int xb = 0; xb <= n; ++xb) {
      const double w = std::exp(binomial_log_pmf(n, xa, pi_a) + binomial_log_pmf(n, xb, pi_b));
      switch (classify(xa, xb, n, d)) {
        case Band::Correct: total.p_correct += w; break;
        case Band::Ambiguous: total.p_ambiguous += w; break;
        case Band::Below: total.p_below += w; break;
      }
    }
  }
  return total;
}

}  // namespace selecta::kernels
