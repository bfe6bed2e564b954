#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "igsmac/model.hpp"
#include "igsmac/single_user.hpp"

namespace igsmac {

/// Direction along which the rate region boundary is probed: user k is
/// granted the rate alpha_k * r.
struct RateProfile {
  std::vector<double> weights;  ///< alpha_k >= 0, summing to 1

  int num_users() const { return static_cast<int>(weights.size()); }
  void validate() const;
};

enum class SignalingMode { igs, pgs };

struct SolveOptions {
  SignalingMode mode = SignalingMode::igs;
  double tol = 1e-8;    ///< bisection width on r, b/s/Hz
  int max_bisect = 60;
};

/// A user pinned by the activation loop, with the constraint that pinned it.
struct FixedUser {
  enum class Bind { rate_cap, power, circularity };
  int user = -1;
  SignalParams params;
  Bind bind = Bind::rate_cap;
};

/// One solved point of the rate-region boundary.
struct BoundaryPoint {
  double r = 0.0;
  double aggregate_c = 0.0;            ///< circularity of the total interference
  std::vector<double> alpha;
  std::vector<SignalParams> params;    ///< one entry per user
  std::vector<double> rates;           ///< achieved R_k
  std::vector<int> support;            ///< users with alpha_k > 0
  std::vector<int> saturated_proper;   ///< users with log2(1+P_k) == alpha_k r
  std::vector<FixedUser> fixed;        ///< users pinned mid-loop (power / circularity)
  NoiseState equivalent_noise;         ///< rho of the final single-user stage
  bool igs_required = false;
  /// False when the point was reached without the PU constraint binding
  /// (full budgets fit inside the tolerable interference).
  bool pu_constraint_active = true;
  double pu_rate_achieved = 0.0;
};

/// Interference power the PU tolerates when the aggregate interference has
/// circularity c, given equivalent noise rho.  Independent of how the
/// interference gain splits across users.
double tolerable_interference(double c, const NoiseState& noise, double pu_snr,
                              double rate_target);

/// Users of the support whose budget rate cap strictly exceeds their share
/// of r (the set the optimality condition is stated over).
std::vector<int> unsaturated_users(const CanonicalScenario& scenario,
                                   const RateProfile& profile, double r_star);

/// Sum-gain condition under which the boundary point needs improper
/// signaling: sum over `active` of a_k >= sum over the saturated rest of
/// a_k P_k + beta.
bool igs_required(const CanonicalScenario& scenario, std::span<const int> active,
                  std::span<const int> support);

/// Transmit parameters of the active users at aggregate circularity c, with
/// both interference constraints tight and every user at its target rate.
std::vector<SignalParams> user_params_from_c(double c, double r, const RateProfile& profile,
                                             std::span<const int> active,
                                             const NoiseState& noise,
                                             const CanonicalScenario& scenario);

/// First active user to hit its power budget or maximal impropriety as the
/// aggregate circularity grows.
struct NextActivation {
  enum class Kind { none, power, circularity };
  int user = -1;
  double c_prime = 1.0;  ///< sentinel 1.0 when kind == none
  Kind kind = Kind::none;
  /// Whether ranking users by (P_k - 1) 2^{-alpha_k r} would have picked the
  /// same binding user as the c-root comparison.
  bool legacy_rule_agrees = true;
};
NextActivation next_activation(double c_hi, double r, const RateProfile& profile,
                               std::span<const int> active, const NoiseState& noise,
                               const CanonicalScenario& scenario);

struct FeasibilityResult {
  bool feasible = false;
  /// log2 rate headroom of the equivalent single user at the accept step;
  /// +inf when the PU constraint is inactive, -inf on structural failure.
  double slack = 0.0;
  std::optional<BoundaryPoint> point;
};

/// Decides whether the rate vector alpha * r is achievable and, if so,
/// returns the transmit parameters, successively pinning users whose power
/// or impropriety bound activates.
FeasibilityResult solve_feasibility(double r, const RateProfile& profile,
                                    const CanonicalScenario& scenario,
                                    const SolveOptions& opts = {});

/// Largest achievable r along the profile direction, found by bisection and
/// a final slack polish so constraint residuals sit near machine precision.
BoundaryPoint solve_boundary_point(const RateProfile& profile,
                                   const CanonicalScenario& scenario,
                                   const SolveOptions& opts = {});

/// Two-user boundary sweep over alpha_1 in {0, 1/(n-1), ..., 1}, sorted by R_1.
std::vector<BoundaryPoint> sweep_region(const CanonicalScenario& scenario, int n_points,
                                        SignalingMode mode, double tol = 1e-8);

/// Upper concave envelope of the union of two sampled 2-D frontiers.
std::vector<std::array<double, 2>> time_sharing_hull(
    std::span<const std::array<double, 2>> region_a,
    std::span<const std::array<double, 2>> region_b);

/// Piecewise-linear value of a frontier polyline at abscissa x (clamped to
/// the polyline's x-range).
double frontier_value_at(std::span<const std::array<double, 2>> frontier, double x);

/// Largest violation across all boundary-point constraints (user rate
/// targets, PU rate target, power and circularity bounds).  Solved points
/// keep this below 1e-8.
double max_constraint_violation(const BoundaryPoint& point,
                                const CanonicalScenario& scenario);

}  // namespace igsmac
