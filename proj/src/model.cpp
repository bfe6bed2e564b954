#include "igsmac/model.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "igsmac/errors.hpp"

namespace igsmac {

void SignalParams::validate() const {
  if (!(power >= 0.0)) {
    throw std::domain_error("SignalParams: power must be nonnegative, got " +
                            std::to_string(power));
  }
  if (!(circularity >= 0.0 && circularity <= 1.0)) {
    throw std::domain_error("SignalParams: circularity must lie in [0, 1], got " +
                            std::to_string(circularity));
  }
}

double CanonicalScenario::beta() const {
  if (pu_rate_target <= 0.0) return -std::numeric_limits<double>::infinity();
  return 1.0 - pu_snr / (std::exp2(2.0 * pu_rate_target) - 1.0);
}

void CanonicalScenario::validate() const {
  if (!(pu_snr >= 0.0)) throw std::invalid_argument("scenario: pu_snr must be >= 0");
  if (gains.size() != budgets.size()) {
    throw std::invalid_argument("scenario: gains and budgets must have one entry per user");
  }
  for (double a : gains) {
    if (!(a >= 0.0)) throw std::invalid_argument("scenario: gains must be >= 0");
  }
  for (double P : budgets) {
    if (!(P > 0.0)) throw std::invalid_argument("scenario: budgets must be > 0");
  }
  if (!(pu_rate_target >= 0.0)) {
    throw std::invalid_argument("scenario: pu_rate_target must be >= 0");
  }
  if (pu_rate_target > pu_capacity() + 1e-12) {
    throw InfeasibleError("scenario: PU rate target " + std::to_string(pu_rate_target) +
                          " exceeds interference-free capacity " +
                          std::to_string(pu_capacity()));
  }
}

void NoiseState::validate() const {
  if (!(total_variance >= 1.0)) {
    throw std::domain_error("NoiseState: total_variance must be >= 1");
  }
  if (!(complementary >= 0.0 && complementary <= total_variance - 1.0 + 1e-12)) {
    throw std::domain_error(
        "NoiseState: complementary magnitude must lie in [0, total_variance - 1]");
  }
}

double su_rate(const SignalParams& params) {
  params.validate();
  return su_rate_pc(params.power, params.circularity);
}

double pu_rate(const CanonicalScenario& scenario, std::span<const SignalParams> all_params) {
  scenario.validate();
  if (static_cast<int>(all_params.size()) != scenario.num_users()) {
    throw std::invalid_argument("pu_rate: need one SignalParams per user");
  }
  double interference = 0.0;
  std::complex<double> complementary{0.0, 0.0};
  for (int k = 0; k < scenario.num_users(); ++k) {
    all_params[k].validate();
    const double apk = scenario.gains[k] * all_params[k].power;
    interference += apk;
    complementary += apk * all_params[k].circularity *
                     std::polar(1.0, all_params[k].phase);
  }
  return pu_rate_aggregate(scenario.pu_snr, interference, std::abs(complementary));
}

double pu_rate_improper_noise(double pu_snr, double gain, const SignalParams& params,
                              const NoiseState& noise) {
  if (!(gain >= 0.0)) throw std::domain_error("pu_rate_improper_noise: gain must be >= 0");
  params.validate();
  noise.validate();
  const double ap = gain * params.power;
  const double interference = ap + noise.improper_power();
  const std::complex<double> complementary =
      ap * params.circularity * std::polar(1.0, params.phase) +
      std::complex<double>{noise.complementary, 0.0};
  return pu_rate_aggregate(pu_snr, interference, std::abs(complementary));
}

std::vector<SignalParams> align_phases(std::vector<SignalParams> all_params) {
  for (auto& p : all_params) p.phase = 0.0;
  return all_params;
}

}  // namespace igsmac
