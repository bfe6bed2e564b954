#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "igsmac/boundary.hpp"
#include "igsmac/canonical.hpp"

namespace igsmac {

/// Two-user decoding orders for the demonstration scenarios: `standard`
/// decodes the last user first (the default reversed-index rule), `swapped`
/// reverses that.
enum class UserOrdering { standard, swapped };

/// Hard-coded two-user demonstration scenarios (id 1..3): fixed channels,
/// p' = P'_1 = P'_2 = 100, unit noise, PU target at 80% of capacity.
PhysicalScenario demo_scenario(int id, UserOrdering order = UserOrdering::standard);

/// Rayleigh draw: every channel entry i.i.d. proper complex Gaussian with
/// unit variance from the (seed, stream) substream; zero_pu_cross zeroes the
/// PU-to-BS channel g.  Powers default to p' = P'_k = 100, unit noise; the
/// PU rate target is left at 0 for the caller to set.
PhysicalScenario gen_rayleigh(int num_users, int num_antennas, std::uint64_t seed,
                              bool zero_pu_cross, std::uint64_t stream = 0);

/// Sets the PU rate target to `fraction` of its interference-free capacity.
void set_rate_target_fraction(PhysicalScenario& phys, double fraction);

struct ExperimentConfig {
  int num_users = 4;
  int num_antennas = 4;
  int trials = 200;
  std::uint64_t seed = 1;
  double pu_rate_fraction = 0.6;
  std::vector<double> alpha = {0.27, 0.13, 0.09, 0.51};  ///< budget-sweep profile
  std::vector<double> budget_grid;  ///< empty: 9 log-spaced points on [1, 1e4]
  int min_users = 1;                ///< user sweep lower end
  int max_users = 5;                ///< user sweep upper end
  double su_budget = 100.0;         ///< per-user budget in the user sweep
  int threads = 0;                  ///< 0: hardware concurrency
  double tol = 1e-8;

  void validate() const;
  std::vector<double> effective_budget_grid() const;
};

struct CurveRow {
  double x = 0.0;  ///< budget level or user count
  double igs_mean = 0.0, igs_se = 0.0;
  double pgs_mean = 0.0, pgs_se = 0.0;
  double igs_per_user = 0.0, pgs_per_user = 0.0;
  int trials = 0;
  int infeasible = 0;
};

struct ExperimentResult {
  std::string name;
  ExperimentConfig config;
  std::vector<CurveRow> rows;
};

/// Average boundary rate r (the sum rate, as the profile weights sum to 1)
/// versus a common SU power budget, for IGS and PGS.
ExperimentResult sumrate_vs_budget(const ExperimentConfig& config);

/// Average sum rate and per-user rate at the fairness point versus the
/// number of users, with N = K and the PU-to-BS channel zeroed.
ExperimentResult sumrate_vs_users(const ExperimentConfig& config);

/// Pairwise (cascade) summation; the reduction every aggregate uses so
/// results do not depend on how trials were scheduled.
double pairwise_sum(std::span<const double> values);

}  // namespace igsmac
