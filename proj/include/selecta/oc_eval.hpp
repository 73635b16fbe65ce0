#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selecta/stats_core.hpp"

namespace selecta {

/// One operating-characteristics scenario: true rates, the analysis priors,
/// and the decision parameters applied to each simulated trial.
struct OcScenario {
  std::string label;
  double true_pi_a = 0.3;
  double true_pi_b = 0.15;
  BetaParams prior_a;
  BetaParams prior_b;
  double d = 0.05;
  double rho = 0.5;
  double theta = 0.9;
  int n_per_arm = 39;
  std::int64_t m = 100000;
  std::uint64_t seed = 20240601;

  void validate() const;

  friend bool operator==(const OcScenario&, const OcScenario&) = default;
};

struct OcResult {
  double xi = 0.0;  ///< fraction of replicates with lambda*_j > theta
  double nu = 0.0;  ///< 1 - xi
  double mc_standard_error = 0.0;
  std::int64_t replicates_used = 0;
  std::int64_t selections = 0;

  friend bool operator==(const OcResult&, const OcResult&) = default;
};

/// Replicate j draws S_A and S_B from streams (seed, j, A) and (seed, j, B).
OcResult estimate_xi(const OcScenario& scenario);
/// Same replicates as estimate_xi; only the reading changes.
OcResult estimate_nu(const OcScenario& scenario);

struct OcGridRow {
  std::string label;
  int n_per_arm = 0;
  std::uint64_t seed = 0;
  OcResult result;

  friend bool operator==(const OcGridRow&, const OcGridRow&) = default;
};

/// Validates every scenario up front, then runs them in input order.
std::vector<OcGridRow> run_scenario_grid(const std::vector<OcScenario>& scenarios);

/// CSV with header label,n,xi,nu,se,m,seed.
std::string oc_grid_csv(const std::vector<OcGridRow>& rows);

}  // namespace selecta
