#pragma once

// Test support: seeded random feasible problem instances.

#include <cmath>

#include "igsmac/model.hpp"
#include "igsmac/rng.hpp"
#include "igsmac/single_user.hpp"

namespace igsmac::testsupport {

inline double log_uniform(PhiloxRng& rng, double lo, double hi) {
  return lo * std::exp(std::log(hi / lo) * rng.next_uniform());
}

/// Feasible single-user instance; resamples until the PU target is
/// attainable under the drawn noise state.
inline SingleUserProblem random_problem(PhiloxRng& rng, bool improper_noise = true) {
  for (;;) {
    SingleUserProblem prob;
    prob.pu_snr = log_uniform(rng, 1.0, 300.0);
    prob.gain = log_uniform(rng, 0.05, 5.0);
    prob.budget = log_uniform(rng, 0.5, 200.0);
    prob.rate_target = (0.3 + 0.65 * rng.next_uniform()) * std::log2(1.0 + prob.pu_snr);
    if (improper_noise) {
      const double pi = 8.0 * rng.next_uniform();
      prob.noise = NoiseState{1.0 + pi, pi * rng.next_uniform()};
    }
    if (prob.feasible()) return prob;
  }
}

/// Random canonical multiuser scenario with the PU target set to a fraction
/// of capacity (always feasible by construction).
inline CanonicalScenario random_canonical(PhiloxRng& rng, int num_users) {
  CanonicalScenario sc;
  sc.pu_snr = log_uniform(rng, 5.0, 300.0);
  for (int k = 0; k < num_users; ++k) {
    sc.gains.push_back(log_uniform(rng, 0.05, 4.0));
    sc.budgets.push_back(log_uniform(rng, 1.0, 300.0));
  }
  sc.pu_rate_target = (0.4 + 0.5 * rng.next_uniform()) * sc.pu_capacity();
  return sc;
}

}  // namespace igsmac::testsupport
