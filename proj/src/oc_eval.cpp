#include "selecta/oc_eval.hpp"

#include <cmath>
#include <cstdio>

#include "selecta/errors.hpp"
#include "selecta/kernels.hpp"

namespace selecta {

void OcScenario::validate() const {
  Validator v("scenario" + (label.empty() ? std::string() : " '" + label + "'"));
  v.require(true_pi_a >= 0.0 && true_pi_a <= 1.0, "true_pi_a", "must lie in [0, 1]");
  v.require(true_pi_b >= 0.0 && true_pi_b <= 1.0, "true_pi_b", "must lie in [0, 1]");
  v.nested([&] { prior_a.validate("prior_a"); });
  v.nested([&] { prior_b.validate("prior_b"); });
  v.require(d >= 0.0 && d < 1.0, "d", "must lie in [0, 1)");
  v.require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
  v.require(theta > 0.0 && theta < 1.0, "theta", "must lie in (0, 1)");
  v.require(n_per_arm >= 1, "n_per_arm", "must be >= 1");
  v.require(m >= 1, "m", "must be >= 1");
  v.throw_if_failed();
}

OcResult estimate_xi(const OcScenario& s) {
  s.validate();
  const auto outcomes =
      kernels::draw_outcomes(s.n_per_arm, s.true_pi_a, s.true_pi_b, s.m, s.seed, std::nullopt);
  const kernels::PosteriorModel model{s.prior_a, s.prior_b, s.d};
  OcResult r;
  r.selections = kernels::count_selections(model, s.n_per_arm, s.rho, s.theta, outcomes);
  r.replicates_used = s.m;
  r.xi = static_cast<double>(r.selections) / static_cast<double>(s.m);
  r.nu = 1.0 - r.xi;
  r.mc_standard_error = std::sqrt(r.xi * (1.0 - r.xi) / static_cast<double>(s.m));
  return r;
}

OcResult estimate_nu(const OcScenario& s) { return estimate_xi(s); }

std::vector<OcGridRow> run_scenario_grid(const std::vector<OcScenario>& scenarios) {
  if (scenarios.empty()) throw DomainError("scenarios", "must not be empty");
  for (const auto& s : scenarios) s.validate();
  std::vector<OcGridRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& s : scenarios) rows.push_back({s.label, s.n_per_arm, s.seed, estimate_xi(s)});
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string oc_grid_csv(const std::vector<OcGridRow>& rows) {
  std::string out = "label,n,xi,nu,se,m,seed\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%.17g,%lld,%llu\n", r.n_per_arm, r.result.xi,
                  r.result.nu, r.result.mc_standard_error,
                  static_cast<long long>(r.result.replicates_used),
                  static_cast<unsigned long long>(r.seed));
    out += csv_field(r.label) + buf;
  }
  return out;
}

}  // namespace selecta
