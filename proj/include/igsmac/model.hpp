#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace igsmac {

inline constexpr double kPi = 3.14159265358979323846;

/// Transmit parameters of one secondary user, in canonical units
/// (unit direct gain, unit receiver noise).
struct SignalParams {
  double power = 0.0;        ///< p_k >= 0, canonical SNR units
  double circularity = 0.0;  ///< c_k in [0, 1]; 0 proper, 1 maximally improper
  double phase = 0.0;        ///< phase of the complementary variance, radians

  /// Throws std::domain_error when power < 0 or circularity is outside [0, 1].
  void validate() const;
};

/// Canonical reduction of the full system: PU SNR p, per-user interference
/// gains a_k, per-user power budgets P_k and the protected PU rate.
struct CanonicalScenario {
  double pu_snr = 0.0;             ///< p
  std::vector<double> gains;       ///< a_k >= 0
  std::vector<double> budgets;     ///< P_k > 0, canonical units
  double pu_rate_target = 0.0;     ///< required PU rate, b/s/Hz

  int num_users() const { return static_cast<int>(gains.size()); }
  double pu_capacity() const { return std::log2(1.0 + pu_snr); }

  /// Rate-margin parameter 1 - p / (2^{2R} - 1).  -inf when the target is 0.
  double beta() const;

  /// Throws std::invalid_argument on shape/sign errors and InfeasibleError
  /// when the PU target exceeds its interference-free capacity.
  void validate() const;
};

/// Equivalent noise seen by the primary receiver once some secondary users
/// have fixed, possibly improper, transmissions folded into it.
/// total_variance == 1 is the plain unit proper noise.
struct NoiseState {
  double total_variance = 1.0;  ///< p_N >= 1
  double complementary = 0.0;   ///< complementary-variance magnitude, in [0, p_N - 1]

  double improper_power() const { return total_variance - 1.0; }
  /// Circularity of the improper part; defined as 0 at total_variance == 1.
  double improper_circularity() const {
    const double pi = improper_power();
    return pi > 0.0 ? complementary / pi : 0.0;
  }
  void validate() const;
};

/// Guards a log2 argument against sinking below 1 from rounding at
/// constraint-equality points.
inline double clamp_log_arg(double x) { return x < 1.0 + 1e-15 ? 1.0 + 1e-15 : x; }

/// Rate of a single improper Gaussian stream over a unit-gain, unit-noise
/// channel: 0.5*log2{1 + p[p(1-c^2) + 2]}.  Branch-free core, no validation.
inline double su_rate_pc(double power, double circ) {
  const double arg = 1.0 + power * (power * (1.0 - circ * circ) + 2.0);
  return 0.5 * std::log2(clamp_log_arg(arg));
}

/// PU rate given total interference power and the magnitude of the aggregate
/// complementary variance of the interference (plus-noise beyond the unit
/// proper part).
inline double pu_rate_aggregate(double pu_snr, double interference,
                                double complementary) {
  const double num = (1.0 + pu_snr + interference) * (1.0 + pu_snr + interference) -
                     complementary * complementary;
  const double den =
      (1.0 + interference) * (1.0 + interference) - complementary * complementary;
  return 0.5 * std::log2(clamp_log_arg(num / den));
}

/// Secondary-user rate; independent of the complementary-variance phase.
double su_rate(const SignalParams& params);

/// PU rate under the aggregate interference of all SUs.
double pu_rate(const CanonicalScenario& scenario, std::span<const SignalParams> all_params);

/// PU rate in the single-SU system whose receiver noise carries an improper
/// component (the equivalent model used throughout the boundary solver).
double pu_rate_improper_noise(double pu_snr, double gain, const SignalParams& params,
                              const NoiseState& noise);

/// Sets every complementary-variance phase to the common value 0, which
/// maximizes the PU rate for fixed powers and circularity coefficients.
std::vector<SignalParams> align_phases(std::vector<SignalParams> all_params);

}  // namespace igsmac
