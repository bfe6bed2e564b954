#include "igsmac/single_user.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "igsmac/detail/bisect.hpp"
#include "igsmac/errors.hpp"

namespace igsmac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients of the PU rate constraint written as a quadratic in the SU
// power:  A(c) q^2 + B(c) q + C <= 0.
struct ConstraintQuadratic {
  double a2;  // A = a^2 (1 - c^2)
  double b1;  // B = 2 a [beta + p_I (1 - c c_I)]
  double c0;  // C, independent of c
};

ConstraintQuadratic constraint_coeffs(const SingleUserProblem& prob, double c) {
  const double a = prob.gain;
  const double beta = prob.beta();
  const double pi = prob.improper_power();
  const double ci = prob.improper_circularity();
  ConstraintQuadratic q{};
  q.a2 = a * a * (1.0 - c * c);
  q.b1 = 2.0 * a * (beta + pi * (1.0 - c * ci));
  q.c0 = prob.constraint_constant();
  return q;
}

double feasibility_margin(const SingleUserProblem& prob) {
  const double pi = prob.improper_power();
  return 1e-12 * std::max(1.0, std::abs((1.0 - prob.beta()) * (prob.pu_snr + 2.0 + 2.0 * pi)));
}

}  // namespace

double SingleUserProblem::beta() const {
  if (rate_target <= 0.0) return -kInf;
  return 1.0 - pu_snr / (std::exp2(2.0 * rate_target) - 1.0);
}

double SingleUserProblem::constraint_constant() const {
  const double pi = improper_power();
  const double ci = improper_circularity();
  return 1.0 + 2.0 * pi + pi * pi * (1.0 - ci * ci) -
         (1.0 - beta()) * (pu_snr + 2.0 + 2.0 * pi);
}

bool SingleUserProblem::feasible() const {
  if (rate_target <= 0.0) return true;
  return constraint_constant() <= feasibility_margin(*this);
}

void SingleUserProblem::validate() const {
  if (!(pu_snr >= 0.0)) throw std::invalid_argument("single-user: pu_snr must be >= 0");
  if (!(gain >= 0.0)) throw std::invalid_argument("single-user: gain must be >= 0");
  if (!(budget > 0.0)) throw std::invalid_argument("single-user: budget must be > 0");
  if (!(rate_target >= 0.0)) throw std::invalid_argument("single-user: rate target must be >= 0");
  noise.validate();
}

double admissible_power(const SingleUserProblem& prob, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error("admissible_power: circularity must lie in [0, 1]");
  }
  if (prob.rate_target <= 0.0 || prob.gain == 0.0) return kInf;
  ConstraintQuadratic qc = constraint_coeffs(prob, c);
  if (qc.c0 > feasibility_margin(prob)) {
    throw InfeasibleError("single-user problem infeasible: PU misses its rate target "
                          "even without secondary interference (margin " +
                          std::to_string(qc.c0) + ")");
  }
  qc.c0 = std::min(qc.c0, 0.0);
  if (qc.a2 <= 0.0) {
    // c == 1: the constraint is linear in the power.
    if (qc.b1 <= 0.0) return kInf;
    return -qc.c0 / qc.b1;
  }
  if (qc.c0 == 0.0) return qc.b1 >= 0.0 ? 0.0 : -qc.b1 / qc.a2;
  // Larger root; this form stays stable as a2 -> 0 and for either sign of b1.
  const double disc = qc.b1 * qc.b1 - 4.0 * qc.a2 * qc.c0;
  return -2.0 * qc.c0 / (qc.b1 + std::sqrt(disc));
}

double rate_trend(const SingleUserProblem& prob, double c) {
  const double q = admissible_power(prob, c);
  const double drift = prob.gain - prob.improper_power() - prob.beta();
  const double ni = prob.improper_power() * prob.improper_circularity();
  if (std::isinf(q)) return c * drift + ni;  // sign of the q -> inf limit
  return q * c * drift + ni * (1.0 + q);
}

int rate_derivative_sign(const SingleUserProblem& prob, double c) {
  const double t = rate_trend(prob, c);
  return (t > 0.0) - (t < 0.0);
}

double igs_gain_threshold(const SingleUserProblem& prob) {
  if (prob.rate_target <= 0.0) {
    throw DegenerateThresholdError("gain threshold undefined for a zero rate target");
  }
  const double pi = prob.improper_power();
  const double ci = prob.improper_circularity();
  const double beta = prob.beta();
  const double w1 = pi * (1.0 - ci) + beta;
  const double w2 = pi * (1.0 + ci) + beta;
  const double denom_2r = std::exp2(2.0 * prob.rate_target) - 1.0;
  const double p_bar = prob.pu_snr * std::exp2(prob.rate_target) / denom_2r;
  const double denom = p_bar * p_bar - w1 * w1;
  if (denom <= 0.0) {
    throw DegenerateThresholdError("gain-threshold denominator vanished; peak "
                                   "circularity falls back to root finding");
  }
  return w1 * (p_bar * p_bar - w1 * w2) / denom;
}

double budget_circularity(const SingleUserProblem& prob) {
  const double q0 = admissible_power(prob, 0.0);
  if (prob.budget <= q0) return 0.0;
  const double q1 = admissible_power(prob, 1.0);
  if (!std::isinf(q1) && q1 < prob.budget) return 1.0;

  // q(c) = P has a root here; set the power to P in the tight constraint and
  // solve the resulting quadratic in c.
  const double u = prob.gain * prob.budget;
  const double m = prob.improper_power() * prob.improper_circularity();
  const double d0 = u * u + 2.0 * u * (prob.beta() + prob.improper_power()) +
                    std::min(prob.constraint_constant(), 0.0);
  double cb = 1.0;
  if (d0 + m * m >= 0.0 && u > 0.0) {
    cb = std::clamp((-m + std::sqrt(m * m + d0)) / u, 0.0, 1.0);
  }
  const double residual_tol = 1e-9 * std::max(1.0, prob.budget);
  const double qb = admissible_power(prob, cb);
  if (std::isfinite(qb) && std::abs(qb - prob.budget) <= residual_tol) return cb;

  // Conditioning fallback: q is nondecreasing, so bisect q(c) - P directly.
  auto gap = [&](double c) {
    const double q = admissible_power(prob, c);
    return std::isinf(q) ? prob.budget : q - prob.budget;
  };
  return detail::bisect(gap, 0.0, 1.0, gap(0.0), 1e-12);
}

double peak_circularity(const SingleUserProblem& prob) {
  const double a = prob.gain;
  const double pi = prob.improper_power();
  const double ci = prob.improper_circularity();
  const double beta = prob.beta();
  const double n = pi * ci;
  if (n <= 0.0) {
    // Proper equivalent noise: the trend has the sign of (a - p_I - beta).
    return a >= pi + beta ? 1.0 : 0.0;
  }
  if (rate_trend(prob, 1.0) >= 0.0) return 1.0;

  // Interior peak: substitute the trend-vanishing power into the tight
  // constraint, which collapses to a quadratic in c.
  const double e = pi + beta - a;  // > 0 whenever the trend turns negative
  const double c0 = std::min(prob.constraint_constant(), 0.0);
  const double k2 = -a * a * n * n - 2.0 * a * n * n * e + c0 * e * e;
  const double k1 = 2.0 * a * n * (beta + pi) * e + 2.0 * a * n * n * n - 2.0 * c0 * e * n;
  const double k0 = a * a * n * n - 2.0 * a * n * n * (beta + pi) + c0 * n * n;

  const double trend_scale = std::max(1.0, n * (1.0 + admissible_power(prob, 0.0)));
  auto acceptable = [&](double c) {
    if (!(c > 0.0 && c < 1.0)) return false;
    if (std::abs(rate_trend(prob, c)) > 1e-8 * trend_scale) return false;
    // The genuine peak has the rate still rising on its left.
    return rate_trend(prob, std::max(0.0, c - 1e-6)) > 0.0;
  };
  const double disc = k1 * k1 - 4.0 * k2 * k0;
  if (disc >= 0.0 && k2 != 0.0) {
    const double sq = std::sqrt(disc);
    for (double root : {(-k1 + sq) / (2.0 * k2), (-k1 - sq) / (2.0 * k2)}) {
      if (acceptable(root)) return root;
    }
  }
  // Closed form rejected by the residual check: the trend is continuous and
  // single-crossing, so bisect it.
  auto trend = [&](double c) { return rate_trend(prob, c); };
  return detail::bisect(trend, 0.0, 1.0, trend(0.0), 1e-12);
}

SingleUserSolution solve_single_user(const SingleUserProblem& prob) {
  prob.validate();
  if (!prob.feasible()) {
    throw InfeasibleError("single-user problem infeasible: PU misses its rate target "
                          "even without secondary interference");
  }
  SingleUserSolution sol;
  if (prob.gain == 0.0 || prob.rate_target <= 0.0) {
    // The PU constraint never binds; full power, proper signaling.
    sol.pu_constraint_inactive = true;
    sol.c_star = 0.0;
    sol.p_star = prob.budget;
    sol.gain_threshold = std::numeric_limits<double>::quiet_NaN();
  } else {
    sol.c_budget = budget_circularity(prob);
    sol.c_peak = peak_circularity(prob);
    sol.c_star = std::min(sol.c_budget, sol.c_peak);
    sol.p_star = std::min(admissible_power(prob, sol.c_star), prob.budget);
    try {
      sol.gain_threshold = igs_gain_threshold(prob);
    } catch (const DegenerateThresholdError&) {
      sol.gain_threshold = std::numeric_limits<double>::quiet_NaN();
    }
  }
  const SignalParams params{sol.p_star, sol.c_star, 0.0};
  sol.su_rate_achieved = su_rate(params);
  sol.pu_rate_achieved = pu_rate_improper_noise(prob.pu_snr, prob.gain, params, prob.noise);
  return sol;
}

}  // namespace igsmac
