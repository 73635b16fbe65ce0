// Acceptance runner: one PASS/FAIL line per criterion, detail lines indented
// below it. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "selecta/cli.hpp"
#include "selecta/decision.hpp"
#include "selecta/freq_sg.hpp"
#include "selecta/json_io.hpp"
#include "selecta/oc_eval.hpp"
#include "selecta/parallel.hpp"
#include "selecta/sample_size.hpp"
#include "selecta/service.hpp"
#include "support.hpp"

using namespace selecta;

namespace {

// Pinned tolerances.
constexpr int kTable1Slack = 1;            // only where first-crossing and always-holds disagree
constexpr int kTable2Slack = 2;            // simulated n_min
constexpr double kOcSlackPp = 1.0;         // Tables 3 and 4, percentage points
constexpr double kFreqLambdaSlack = 0.01;  // frequentist lambda at n = 40
constexpr int kTable6Slack = 1;
constexpr double kPartitionTol = 1e-8;
constexpr double kMcSeMultiple = 3.5;
constexpr std::int64_t kMcDraws = 10'000'000;
constexpr double kBruteForceTol = 1e-12;
constexpr double kRhoOneTol = 1e-8;
constexpr double kFigSeMultiple = 3.0;

// A cell written as "10-" in a printed table.
constexpr int kUnder = -1;

struct Criterion {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& s) { details.push_back(s); }
  void fail(const std::string& s) {
    pass = false;
    details.push_back("mismatch: " + s);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Json> load_rows(const std::string& name) {
  const auto text = cli::read_file(std::string(SELECTA_CONFIG_DIR) + "/" + name);
  return expand_grid(parse_json_text(text));
}

std::string cell_text(const SampleSizeResult& r) {
  return r.under_lower_bound ? "10-" : std::to_string(*r.n_min);
}

std::string cell_text(int v) { return v == kUnder ? "10-" : std::to_string(v); }

// Printed sizing tables, rows in config order; columns are
// (rho 0, gamma .9), (rho 0, gamma .8), (rho .5, gamma .9), (rho .5, gamma .8).
const int kTable1[14][4] = {
    {53, 33, 33, 13}, {67, 30, 38, 19}, {72, 39, 39, 19}, {79, 39, 45, 19}, {87, 47, 52, 17},
    {93, 46, 53, 26}, {94, 54, 54, 26}, {38, 18, 18, 13}, {30, kUnder, 11, kUnder},
    {65, 32, 39, 12}, {50, 19, 25, kUnder}, {87, 39, 47, 12}, {66, 26, 33, kUnder},
    {94, 46, 54, 18}};
const int kTable2[14][4] = {
    {71, 34, 40, 17},  {94, 43, 52, 21},  {115, 50, 65, 25},  {131, 59, 72, 28},
    {145, 64, 79, 31}, {155, 68, 85, 33}, {161, 71, 90, 34},  {60, 24, 30, kUnder},
    {63, kUnder, 22, kUnder}, {106, 43, 54, 15}, {102, 26, 45, kUnder}, {135, 37, 71, 21},
    {125, 37, 58, kUnder}, {153, 62, 80, 25}};
// xi (Table 3) and nu (Table 4) in percent at n = 39 and n = 65.
const double kTable3[21][2] = {
    {54.6, 68.4}, {58.2, 70.7}, {71.6, 80.3}, {73.8, 81.7}, {82.4, 87.2}, {83.4, 88.7},
    {58.2, 70.7}, {60.5, 73.1}, {63.6, 75.3}, {64.5, 75.8}, {64.9, 77.2}, {69.6, 78.2},
    {81.0, 85.9}, {88.7, 91.0}, {93.2, 94.4}, {96.9, 97.2}, {54.7, 69.1}, {64.9, 76.4},
    {64.9, 77.2}, {76.1, 85.3}, {81.0, 86.9}};
const double kTable4[11][2] = {{92.4, 93.9}, {91.2, 92.4}, {90.9, 92.2}, {89.6, 91.5},
                               {87.3, 90.0}, {86.8, 89.2}, {86.4, 89.2}, {79.1, 84.8},
                               {67.1, 77.6}, {55.0, 68.6}, {44.7, 61.0}};

// First n in [n_lo, n_hi] with lambda* > gamma*, for the search-rule check.
int first_crossing(const DesignSpec& s) {
  for (const auto& p : lambda_curve(s, s.n_lo, s.n_hi, CurveMethod::Deterministic))
    if (p.value > s.gamma_star) return p.n;
  return -1;
}

struct SizingGrid {
  std::vector<DesignSpec> specs;
  std::vector<SampleSizeResult> results;
};

SizingGrid run_sizing(const std::string& config, bool simulated) {
  SizingGrid g;
  for (const auto& row : load_rows(config)) {
    g.specs.push_back(decode<DesignSpec>(row));
    g.results.push_back(simulated ? min_sample_size_simulated(g.specs.back())
                                  : min_sample_size_deterministic(g.specs.back()));
  }
  return g;
}

Criterion check_table1(const SizingGrid& g) {
  Criterion c;
  int exact = 0;
  for (std::size_t i = 0; i < g.results.size(); ++i) {
    const int want = kTable1[i / 4][i % 4];
    const auto& r = g.results[i];
    const std::string where = fmt("row %zu col %zu", i / 4 + 1, i % 4 + 1);
    if (want == kUnder) {
      if (r.under_lower_bound) ++exact;
      else c.fail(where + ": expected 10-, got " + cell_text(r));
      continue;
    }
    if (r.n_min && *r.n_min == want) {
      ++exact;
      continue;
    }
    const int got = r.n_min ? *r.n_min : 9;
    const bool ambiguous = first_crossing(g.specs[i]) != got;
    if (ambiguous && std::abs(got - want) <= kTable1Slack)
      c.note(where + ": " + cell_text(r) + " vs " + cell_text(want) + " (search-rule ambiguity)");
    else
      c.fail(where + ": expected " + cell_text(want) + ", got " + cell_text(r));
  }
  c.note(fmt("%d/%zu cells exact", exact, g.results.size()));
  return c;
}

Criterion check_worked_example() {
  Criterion c;
  const int x = expected_responders(30, 0.25);
  c.note(fmt("expected_responders(30, 0.25) = %d", x));
  if (x != 8) c.fail("expected 8");
  return c;
}

Criterion check_table2(const SizingGrid& g) {
  Criterion c;
  int exact = 0;
  int worst = 0;
  for (std::size_t i = 0; i < g.results.size(); ++i) {
    const int want = kTable2[i / 4][i % 4];
    const auto& r = g.results[i];
    const std::string where = fmt("row %zu col %zu", i / 4 + 1, i % 4 + 1);
    if (want == kUnder) {
      // "10-" is at most 9; within the slack means at most 9 + 2.
      if (r.under_lower_bound) ++exact;
      else if (*r.n_min <= 9 + kTable2Slack) c.note(where + ": 10- vs " + cell_text(r));
      else c.fail(where + ": expected 10-, got " + cell_text(r));
      continue;
    }
    const int got = r.n_min ? *r.n_min : 9;
    const int diff = std::abs(got - want);
    worst = std::max(worst, diff);
    if (diff == 0) ++exact;
    else if (diff <= kTable2Slack) c.note(where + ": " + cell_text(r) + " vs " + cell_text(want));
    else c.fail(where + ": expected " + cell_text(want) + " +-2, got " + cell_text(r));
  }
  c.note(fmt("%d/%zu cells exact, largest difference %d", exact, g.results.size(), worst));
  return c;
}

Criterion check_monotone(const SizingGrid& t1, const SizingGrid& t2) {
  Criterion c;
  int pairs = 0;
  for (const auto* g : {&t1, &t2}) {
    for (std::size_t i = 0; i + 1 < g->results.size(); i += 2) {
      // Columns come in (gamma .9, gamma .8) pairs for each rho.
      const auto& hi = g->results[i];
      const auto& lo = g->results[i + 1];
      const int n_hi = hi.n_min ? *hi.n_min : 9;
      const int n_lo = lo.n_min ? *lo.n_min : 9;
      ++pairs;
      if (n_hi < n_lo)
        c.fail(fmt("%s row %zu rho %g: n(0.90)=%d < n(0.80)=%d", g == &t1 ? "Table 1" : "Table 2",
                   i / 4 + 1, g->specs[i].rho, n_hi, n_lo));
    }
  }
  c.note(fmt("%d threshold pairs checked", pairs));
  return c;
}

// Invariant over the bundled grid: simulated n_min >= deterministic n_min.
Criterion check_simulated_not_smaller(const SizingGrid& t1, const SizingGrid& t2) {
  Criterion c;
  for (std::size_t i = 0; i < t1.results.size() && i < t2.results.size(); ++i) {
    const int det = t1.results[i].n_min ? *t1.results[i].n_min : 9;
    const int sim = t2.results[i].n_min ? *t2.results[i].n_min : 9;
    if (sim < det) c.fail(fmt("row %zu col %zu: simulated %d < deterministic %d", i / 4 + 1, i % 4 + 1, sim, det));
  }
  c.note(fmt("%zu scenario pairs checked", std::min(t1.results.size(), t2.results.size())));
  return c;
}

Criterion check_oc(const std::string& config, const double (*paper)[2], bool nu) {
  Criterion c;
  const auto rows = load_rows(config);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto s = decode<OcScenario>(rows[i]);
    const auto r = nu ? estimate_nu(s) : estimate_xi(s);
    const double got = 100.0 * (nu ? r.nu : r.xi);
    const double want = paper[i / 2][i % 2];
    const double diff = std::fabs(got - want);
    worst = std::max(worst, diff);
    const std::string line = fmt("%s n=%d: %.2f vs %.1f (se %.2f)", s.label.c_str(), s.n_per_arm, got,
                                 want, 100.0 * r.mc_standard_error);
    if (diff > kOcSlackPp) c.fail(line);
    if (nu) {
      if (r.nu != 1.0 - r.xi) c.fail(s.label + ": nu != 1 - xi");
      if (!(r == estimate_xi(s))) c.fail(s.label + ": nu and xi runs differ");
    }
  }
  c.note(fmt("%zu cells, largest difference %.2f pp", rows.size(), worst));
  return c;
}

Criterion check_table5() {
  Criterion c;
  const auto rows = load_rows("table5.json");
  const double want[2] = {0.82, 0.86};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = analyze_trial(decode<DecisionInputs>(rows[i]));
    const double rounded = std::round(r.lambda_star * 100.0) / 100.0;
    const auto line = fmt("lambda* row %zu = %.4f -> %.2f (printed %.2f)", i + 1, r.lambda_star, rounded, want[i]);
    if (std::fabs(rounded - want[i]) > 1e-9) c.fail(line);
    else c.note(line);
  }
  FreqDesign f;
  bool any = false;
  for (auto m : {FreqMethod::Exact, FreqMethod::NormalApprox}) {
    f.method = m;
    const double l = lambda_freq(40, f);
    c.note(fmt("frequentist lambda(40), %s = %.4f", std::string(to_string(m)).c_str(), l));
    any = any || std::fabs(l - 0.81) <= kFreqLambdaSlack;
  }
  if (!any) c.fail("frequentist lambda(40) not within 0.01 of 0.81 by either method");
  return c;
}

Criterion check_table6() {
  Criterion c;
  const auto bayes = load_rows("table6.json");
  const int want_bayes[2] = {40, 20};
  for (std::size_t i = 0; i < bayes.size(); ++i) {
    const auto r = min_sample_size_deterministic(decode<DesignSpec>(bayes[i]));
    const auto line = fmt("Bayesian row %zu: n_min %s (printed %d)", i + 1, cell_text(r).c_str(), want_bayes[i]);
    if (!r.n_min || std::abs(*r.n_min - want_bayes[i]) > kTable6Slack) c.fail(line);
    else c.note(line);
  }
  for (const auto& row : load_rows("table6_freq.json")) {
    const auto f = decode<FreqDesign>(row);
    const auto r = min_sample_size_freq(f);
    const auto line = fmt("frequentist %s: n_min %s (printed 40)", std::string(to_string(f.method)).c_str(),
                          cell_text(r).c_str());
    if (f.method != FreqMethod::Exact) {
      c.note(line);
      continue;
    }
    if (!r.n_min || std::abs(*r.n_min - 40) > kTable6Slack) {
      c.fail(line);
      c.note(fmt("lambda exact at n=31..40: %.4f %.4f ... %.4f", lambda_freq(31, f), lambda_freq(32, f),
                 lambda_freq(40, f)));
    } else {
      c.note(line);
    }
  }
  return c;
}

struct PosteriorCase {
  BetaParams a;
  BetaParams b;
  double d;
};

std::vector<PosteriorCase> random_cases(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> shape(0.5, 5.0);
  std::uniform_int_distribution<int> size(0, 120);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> margin(0.0, 0.3);
  std::vector<PosteriorCase> out;
  for (int i = 0; i < count; ++i) {
    const int na = size(gen);
    const int nb = size(gen);
    const int sa = static_cast<int>(std::floor(unit(gen) * (na + 1)));
    const int sb = static_cast<int>(std::floor(unit(gen) * (nb + 1)));
    const BetaParams pa{shape(gen), shape(gen)};
    const BetaParams pb{shape(gen), shape(gen)};
    out.push_back({posterior_update(pa, {na, std::min(sa, na)}), posterior_update(pb, {nb, std::min(sb, nb)}),
                   margin(gen)});
  }
  return out;
}

Criterion check_properties() {
  Criterion c;

  // (a) partition of unity
  const auto cases = random_cases(200, 11);
  double worst_a = 0.0;
  double worst_d = 0.0;
  for (const auto& k : cases) {
    const auto p = selection_probabilities(k.a, k.b, k.d);
    const double below = prob_below(k.a, k.b, k.d);
    worst_a = std::max(worst_a, std::fabs(p.p_correct + p.p_ambiguous + below - 1.0));
    // (d) rho = 1 against the independently integrated lower tail
    worst_d = std::max(worst_d, std::fabs(p.lambda(1.0) - (1.0 - below)));
  }
  c.note(fmt("(a) max |P_corr + P_amb + P_below - 1| = %.2e over %zu pairs", worst_a, cases.size()));
  if (worst_a > kPartitionTol) c.fail("(a) partition tolerance exceeded");
  c.note(fmt("(d) max |lambda(rho=1) - Pr[diff >= -d]| = %.2e", worst_d));
  if (worst_d > kRhoOneTol) c.fail("(d) rho = 1 identity tolerance exceeded");

  // (b) quadrature against Monte-Carlo pair sampling
  const auto mc_cases = random_cases(50, 12);
  std::vector<oracle::McEstimate> mc(mc_cases.size());
  parallel_for(0, static_cast<std::int64_t>(mc_cases.size()), [&](std::int64_t i) {
    mc[i] = oracle::mc_difference(mc_cases[i].a, mc_cases[i].b, mc_cases[i].d, kMcDraws, 1000 + i);
  });
  double worst_z = 0.0;
  for (std::size_t i = 0; i < mc_cases.size(); ++i) {
    const auto& k = mc_cases[i];
    const auto p = selection_probabilities(k.a, k.b, k.d);
    for (auto [q, m] : {std::pair{p.p_correct, mc[i].p_correct}, std::pair{p.p_ambiguous, mc[i].p_ambiguous}}) {
      const double se = mc[i].se(m);
      // A probability of exactly 0 or 1 under MC has zero sample variance;
      // compare against one-draw resolution instead.
      const double z = std::fabs(q - m) / std::max(se, 1.0 / static_cast<double>(kMcDraws));
      worst_z = std::max(worst_z, z);
      if (z > kMcSeMultiple) c.fail(fmt("(b) case %zu: quadrature %.6f vs MC %.6f (%.2f SE)", i, q, m, z));
    }
  }
  c.note(fmt("(b) largest deviation %.2f SE over %zu cases x 2 probabilities, %lld draws each", worst_z,
             mc_cases.size(), static_cast<long long>(kMcDraws)));

  // (c) exact frequentist sums against brute-force enumeration
  double worst_c = 0.0;
  int grid_points = 0;
  for (double pa : {0.1, 0.45, 0.8}) {
    for (double pb : {0.05, 0.4, 0.9}) {
      for (double d : {0.0, 0.1, 1.0 / 3.0}) {
        ++grid_points;
        for (int n = 1; n <= 6; ++n) {
          const auto bf = oracle::brute_force_partition(n, pa, pb, d);
          const auto ex = kernels::binomial_partition(n, pa, pb, d);
          worst_c = std::max({worst_c, std::fabs(ex.p_correct - bf.correct),
                              std::fabs(ex.p_ambiguous - bf.ambiguous), std::fabs(ex.p_below - bf.below)});
        }
      }
    }
  }
  c.note(fmt("(c) max |exact - brute force| = %.2e over n <= 6 and %d (pi_A, pi_B, d) points", worst_c,
             grid_points));
  if (worst_c > kBruteForceTol) c.fail("(c) brute-force tolerance exceeded");

  // (e) bit-identical across runs and thread counts
  auto snapshot = [] {
    DesignSpec s;
    s.m = 20000;
    s.n_hi = 80;
    s.gamma_star = 0.7;
    OcScenario o;
    o.m = 20000;
    Json j;
    j["sim"] = to_json(min_sample_size_simulated(s));
    j["curve"] = to_json(lambda_curve(s, 20, 30, CurveMethod::Simulated));
    j["oc"] = to_json(estimate_xi(o));
    return j.dump();
  };
  const int saved = max_threads();
  set_simulation_cache_enabled(false);
  set_thread_count(1);
  const auto a = snapshot();
  const auto b = snapshot();
  set_thread_count(4);
  const auto t4 = snapshot();
  set_thread_count(saved);
  set_simulation_cache_enabled(true);
  c.note(fmt("(e) repeat run %s, 1 vs 4 threads %s", a == b ? "identical" : "DIFFERENT",
             a == t4 ? "identical" : "DIFFERENT"));
  if (a != b || a != t4) c.fail("(e) results differ across runs or thread counts");
  return c;
}

Criterion check_figures() {
  Criterion c;
  const auto fig1 = load_rows("fig1.json");
  const Json det = service::curve(fig1[0])["result"]["curve"];
  std::vector<std::string> dips;
  for (std::size_t i = 0; i + 1 < det.size(); ++i) {
    const int n = det[i]["n"].get<int>();
    if (n + 1 >= 40) break;
    if (det[i + 1]["value"].get<double>() < det[i]["value"].get<double>()) dips.push_back(std::to_string(n) + "->" + std::to_string(n + 1));
  }
  std::string list;
  for (const auto& d : dips) list += (list.empty() ? "" : " ") + d;
  c.note(fmt("deterministic vague curve: %zu local decreases below n=40 (%s)", dips.size(), list.c_str()));
  if (dips.empty()) c.fail("no local decrease in the deterministic curve below n=40");

  const auto fig2 = load_rows("fig2.json");
  const Json sim = service::curve(fig2[0])["result"]["curve"];
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < sim.size(); ++i) {
    const double drop = sim[i]["value"].get<double>() - sim[i + 1]["value"].get<double>();
    const double se0 = sim[i]["standard_error"].get<double>();
    const double se1 = sim[i + 1]["standard_error"].get<double>();
    const double z = drop / std::sqrt(se0 * se0 + se1 * se1);
    worst = std::max(worst, z);
    if (z > kFigSeMultiple)
      c.fail(fmt("simulated curve drops %.5f between n=%d and n=%d (%.2f SE)", drop, sim[i]["n"].get<int>(),
                 sim[i + 1]["n"].get<int>(), z));
  }
  c.note(fmt("simulated curve over n=10..200: largest decrease %.2f SE of the difference", worst));
  return c;
}

int failures = 0;

void report(const std::string& name, const std::function<Criterion()>& run) {
  const auto start = std::chrono::steady_clock::now();
  Criterion c;
  try {
    c = run();
  } catch (const std::exception& e) {
    c.pass = false;
    c.details.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %s (%.1fs)\n", c.pass ? "PASS" : "FAIL", name.c_str(), secs);
  for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  failures += !c.pass;
}

}  // namespace

int main() {
  configure_threads_from_env();
  SizingGrid t1;
  SizingGrid t2;
  report("table1_deterministic_sample_size", [&] {
    t1 = run_sizing("table1.json", false);
    return check_table1(t1);
  });
  report("worked_example_expected_responders", check_worked_example);
  report("table2_simulated_sample_size", [&] {
    t2 = run_sizing("table2.json", true);
    return check_table2(t2);
  });
  report("threshold_monotonicity", [&] { return check_monotone(t1, t2); });
  report("invariant_simulated_not_below_deterministic", [&] { return check_simulated_not_smaller(t1, t2); });
  report("table3_correct_selection_xi", [] { return check_oc("table3.json", kTable3, false); });
  report("table4_secondary_factor_nu", [] { return check_oc("table4.json", kTable4, true); });
  report("table5_case_study_lambda", check_table5);
  report("table6_case_study_sample_size", check_table6);
  report("property_suite", check_properties);
  report("figure_curves_qualitative", check_figures);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
