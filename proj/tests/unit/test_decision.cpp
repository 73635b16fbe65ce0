#include <doctest.h>

#include <cmath>

#include "selecta/decision.hpp"
#include "selecta/errors.hpp"
#include "../support.hpp"

using namespace selecta;

TEST_SUITE("decision") {

TEST_CASE("selection probabilities agree with Monte-Carlo pair sampling") {
  struct Case {
    BetaParams a;
    BetaParams b;
    double d;
  };
  const Case cases[] = {{{23, 19}, {17, 25}, 0.1},
                        {{3, 7}, {2, 8}, 0.05},
                        {{42, 64}, {38, 68}, 0.1},
                        {{13, 28}, {7, 34}, 0.0},
                        {{0.5, 0.5}, {2, 3}, 0.2}};
  std::uint64_t seed = 500;
  for (const auto& c : cases) {
    const auto mc = oracle::mc_difference(c.a, c.b, c.d, 2'000'000, seed++);
    const double pc = prob_correct(c.a, c.b, c.d);
    const double pa = prob_ambiguous(c.a, c.b, c.d);
    const double pb = prob_below(c.a, c.b, c.d);
    CHECK(std::fabs(pc - mc.p_correct) <= 4.0 * mc.se(mc.p_correct));
    CHECK(std::fabs(pa - mc.p_ambiguous) <= 4.0 * mc.se(mc.p_ambiguous));
    CHECK(std::fabs(pb - mc.p_below) <= 4.0 * mc.se(mc.p_below));
  }
}

TEST_CASE("three regions partition the unit probability") {
  for (double d : {0.0, 0.05, 0.1, 0.3, 0.9}) {
    for (auto [a, b] : {std::pair{BetaParams{23, 19}, BetaParams{17, 25}},
                        std::pair{BetaParams{1, 1}, BetaParams{1, 1}},
                        std::pair{BetaParams{120, 40}, BetaParams{3, 90}}}) {
      const double total = prob_correct(a, b, d) + prob_ambiguous(a, b, d) + prob_below(a, b, d);
      CHECK(std::fabs(total - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("shapes below two partition cleanly") {
  const struct {
    BetaParams a;
    BetaParams b;
    double d;
  } cases[] = {{{33.7752, 50.604}, {1.41318, 12.7991}, 0.160566},
               {{0.5, 0.5}, {0.5, 0.5}, 0.0},
               {{0.6, 3}, {0.7, 0.55}, 0.1},
               {{12, 1.5}, {1.2, 0.8}, 0.25}};
  for (const auto& c : cases) {
    const auto p = selection_probabilities(c.a, c.b, c.d);
    CHECK(std::fabs(p.p_correct + p.p_ambiguous + prob_below(c.a, c.b, c.d) - 1.0) <= 1e-8);
    const auto mc = oracle::mc_difference(c.a, c.b, c.d, 1'000'000, 77);
    CHECK(std::fabs(p.p_correct - mc.p_correct) <= 4 * mc.se(mc.p_correct) + 1e-6);
    CHECK(std::fabs(p.p_ambiguous - mc.p_ambiguous) <= 4 * mc.se(mc.p_ambiguous) + 1e-6);
  }
}

TEST_CASE("swapping arms swaps correct and below") {
  const BetaParams a{23, 19};
  const BetaParams b{17, 25};
  for (double d : {0.0, 0.05, 0.1}) {
    CHECK(std::fabs(prob_correct(a, b, d) - prob_below(b, a, d)) <= 1e-8);
    CHECK(std::fabs(prob_ambiguous(a, b, d) - prob_ambiguous(b, a, d)) <= 1e-8);
  }
}

TEST_CASE("rho = 1 gives Pr[pi_A - pi_B >= -d]") {
  const BetaParams a{9, 31};
  const BetaParams b{12, 28};
  const auto p = selection_probabilities(a, b, 0.1);
  CHECK(std::fabs(p.lambda(1.0) - prob_at_least(a, b, 0.1)) <= 1e-12);
  CHECK(p.lambda(0.0) == p.p_correct);
}

TEST_CASE("correct selection falls and ambiguity rises as d widens") {
  const BetaParams a{23, 19};
  const BetaParams b{17, 25};
  double last_c = 2.0;
  double last_a = -1.0;
  for (double d = 0.0; d <= 0.5; d += 0.025) {
    const auto p = selection_probabilities(a, b, d);
    CHECK(p.p_correct <= last_c + 1e-12);
    CHECK(p.p_ambiguous >= last_a - 1e-12);
    last_c = p.p_correct;
    last_a = p.p_ambiguous;
  }
}

TEST_CASE("d = 0 with equal vague posteriors gives one half") {
  const auto p = selection_probabilities({1, 1}, {1, 1}, 0.0);
  CHECK(std::fabs(p.p_correct - 0.5) <= 1e-10);
  CHECK(std::fabs(p.p_ambiguous) <= 1e-10);
  // Closed form for uniform posteriors: Pr[X - Y > d] = (1 - d)^2 / 2.
  const auto q = selection_probabilities({1, 1}, {1, 1}, 0.2);
  CHECK(std::fabs(q.p_correct - 0.32) <= 1e-10);
  CHECK(std::fabs(q.p_ambiguous - (1.0 - 2 * 0.32)) <= 1e-10);
}

TEST_CASE("no data under identical priors is symmetric") {
  DecisionInputs in;
  in.prior_a = {3, 7};
  in.prior_b = {3, 7};
  in.data_a = {0, 0};
  in.data_b = {0, 0};
  in.d = 0.05;
  const auto r = analyze_trial(in);
  CHECK(std::fabs(r.p_correct - r.p_below) <= 1e-9);
}

TEST_CASE("decide uses a strict inequality") {
  CHECK(decide(0.91, 0.9) == Decision::SelectA);
  CHECK(decide(0.9, 0.9) == Decision::ConsiderOtherFactors);
  CHECK(decide(0.2, 0.9) == Decision::ConsiderOtherFactors);
  CHECK(to_string(Decision::SelectA) == "select A");
  CHECK(to_string(Decision::ConsiderOtherFactors) == "consider other factors");
}

TEST_CASE("analyze_trial on the worked example data") {
  DecisionInputs in;
  in.prior_a = {1, 1};
  in.prior_b = {1, 1};
  in.data_a = {40, 22};
  in.data_b = {40, 16};
  in.d = 0.1;
  const auto r = analyze_trial(in);
  CHECK(r.posterior_a == BetaParams{23, 19});
  CHECK(r.posterior_b == BetaParams{17, 25});
  CHECK(r.lambda_star == doctest::Approx(r.p_correct + 0.5 * r.p_ambiguous).epsilon(1e-14));
  CHECK(std::fabs(r.lambda_star - 0.82) < 0.005);
  CHECK(r.decision == Decision::ConsiderOtherFactors);

  in.prior_b = {26, 40};
  const auto inf = analyze_trial(in);
  CHECK(inf.posterior_b == BetaParams{42, 64});
  CHECK(std::fabs(inf.lambda_star - 0.86) < 0.005);
  CHECK(inf.decision == Decision::ConsiderOtherFactors);
}

TEST_CASE("strong evidence selects A") {
  DecisionInputs in;
  in.data_a = {60, 40};
  in.data_b = {60, 12};
  in.d = 0.1;
  const auto r = analyze_trial(in);
  CHECK(r.lambda_star > 0.99);
  CHECK(r.decision == Decision::SelectA);
}

TEST_CASE("input validation names offending fields") {
  DecisionInputs in;
  in.data_a = {10, 4};
  in.data_b = {10, 3};
  in.rho = 1.5;
  in.theta = 1.0;
  try {
    analyze_trial(in);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    bool rho = false;
    bool theta = false;
    for (const auto& f : e.fields()) {
      rho |= f.field == "rho";
      theta |= f.field == "theta";
    }
    CHECK(rho);
    CHECK(theta);
  }
  in.rho = 0.5;
  in.theta = 0.9;
  in.d = -0.1;
  CHECK_THROWS_AS(analyze_trial(in), DomainError);
  in.d = 0.1;
  in.data_b = {10, 12};
  CHECK_THROWS_AS(analyze_trial(in), DomainError);
}

}  // TEST_SUITE
