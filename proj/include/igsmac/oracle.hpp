#pragma once

#include <vector>

#include "igsmac/boundary.hpp"
#include "igsmac/single_user.hpp"

namespace igsmac {

struct SingleUserBrute {
  bool any_feasible = false;
  double best_rate = 0.0;
  double best_power = 0.0;
  double best_circularity = 0.0;
};

/// Exhaustive grid search over (power, circularity) in [0, P_S] x [0, 1],
/// keeping points whose PU rate meets the target.  Rates are evaluated
/// through the model formulas only; none of the closed-form solver machinery
/// is shared, so this is an independent lower bound on the optimum.
SingleUserBrute brute_single_user(const SingleUserProblem& prob, int grid_n);

struct BoundaryBrute {
  bool any_feasible = false;
  double r_lower_bound = 0.0;
  std::vector<SignalParams> best;
};

/// Exhaustive per-user grid search maximizing min_k R_k / alpha_k subject to
/// the PU rate constraint and the power budgets, with the common-phase
/// convention.  Cost grows as grid_n^{2K}; K > 3 is refused outright.
BoundaryBrute brute_boundary(const RateProfile& profile, const CanonicalScenario& scenario,
                             int grid_n);

}  // namespace igsmac
