#pragma once

#include "igsmac/model.hpp"

namespace igsmac {

/// One secondary user with gain `gain` into a primary receiver whose noise
/// may carry an improper component.  This is both the standalone problem and
/// the equivalent representation the multiuser boundary solver reduces to.
struct SingleUserProblem {
  double pu_snr = 0.0;       ///< p
  double gain = 0.0;         ///< a_S >= 0
  double budget = 0.0;       ///< P_S > 0
  double rate_target = 0.0;  ///< protected PU rate, b/s/Hz
  NoiseState noise;          ///< equivalent PU-side noise

  double beta() const;
  double improper_power() const { return noise.improper_power(); }
  double improper_circularity() const { return noise.improper_circularity(); }

  /// Constant term of the quadratic power constraint; the problem is
  /// feasible iff it is <= 0 (the PU meets its target with the SU silent).
  double constraint_constant() const;
  bool feasible() const;
  void validate() const;
};

struct SingleUserSolution {
  double c_star = 0.0;   ///< optimal circularity coefficient
  double p_star = 0.0;   ///< optimal transmit power
  double c_budget = 0.0; ///< circularity cap imposed by the power budget
  double c_peak = 0.0;   ///< circularity at which the unconstrained rate peaks
  double gain_threshold = 0.0;  ///< gain above which c_peak == 1 (NaN if degenerate)
  double su_rate_achieved = 0.0;
  double pu_rate_achieved = 0.0;
  bool pu_constraint_inactive = false;  ///< gain == 0: budget is the only limit
};

/// Largest SU transmit power that keeps the PU rate at or above its target
/// when the SU transmits with circularity c.  Returns +inf when the
/// constraint can never bind (gain == 0, or a vanishing rate target).
/// Throws InfeasibleError when the problem is infeasible.
double admissible_power(const SingleUserProblem& prob, double c);

/// Value whose sign matches the derivative of the SU rate along the
/// constraint-tight power curve p = admissible_power(c).
double rate_trend(const SingleUserProblem& prob, double c);

/// Sign (-1, 0, +1) of rate_trend.
int rate_derivative_sign(const SingleUserProblem& prob, double c);

/// Gain threshold above which the constraint-tight rate keeps increasing all
/// the way to c == 1.  Throws DegenerateThresholdError when its closed-form
/// denominator vanishes; the peak is then found by root finding instead.
double igs_gain_threshold(const SingleUserProblem& prob);

/// Largest circularity for which the tight-power curve stays within the
/// budget envelope max[P_S, q(0)].
double budget_circularity(const SingleUserProblem& prob);

/// Largest circularity at which the budget-unconstrained rate is still
/// non-decreasing; the rate is unimodal so this is its peak.
double peak_circularity(const SingleUserProblem& prob);

/// Optimal transmit power and circularity: c* = min of the two circularity
/// limits, p* = min[admissible_power(c*), budget].
SingleUserSolution solve_single_user(const SingleUserProblem& prob);

}  // namespace igsmac
