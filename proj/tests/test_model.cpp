#include "igsmac/model.hpp"

#include <cmath>
#include <complex>
#include <doctest.h>
#include <stdexcept>
#include <vector>

#include "igsmac/rng.hpp"

using namespace igsmac;

namespace {

// Independent route for every rate formula: the 2x2 real-composite
// covariance determinant ratio.  A complex variable with variance v and
// complementary variance u has real covariance 0.5*[[v+Re u, Im u],
// [Im u, v-Re u]].
double composite_det(double var, std::complex<double> comp) {
  const double a = 0.5 * (var + comp.real());
  const double d = 0.5 * (var - comp.real());
  const double b = 0.5 * comp.imag();
  return a * d - b * b;
}

// Rate of a proper Gaussian signal with power `sig` against Gaussian
// interference-plus-noise with variance `var` and complementary `comp`.
double composite_pu_rate(double sig, double var, std::complex<double> comp) {
  return 0.5 * std::log2(composite_det(sig + var, comp) / composite_det(var, comp));
}

// Rate of an improper Gaussian signal over unit proper noise.
double composite_su_rate(double power, double circ, double phase) {
  const std::complex<double> comp = power * circ * std::polar(1.0, phase);
  return 0.5 * std::log2(composite_det(1.0 + power, comp) / composite_det(1.0, {0.0, 0.0}));
}

CanonicalScenario one_user_scenario(double p, double a, double target) {
  CanonicalScenario sc;
  sc.pu_snr = p;
  sc.gains = {a};
  sc.budgets = {1e6};
  sc.pu_rate_target = target;
  return sc;
}

}  // namespace

TEST_CASE("su_rate matches the closed form and the composite oracle") {
  CHECK(su_rate({0.0, 0.7, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(su_rate({5.0, 0.0, 0.0}) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
  // Maximally improper: 0.5*log2(11), cross-checked against the 2x2
  // real-composite mutual information.
  CHECK(su_rate({5.0, 1.0, 0.0}) == doctest::Approx(1.7297158093186487).epsilon(1e-12));
  for (double p : {0.3, 2.0, 17.0}) {
    for (double c : {0.0, 0.4, 1.0}) {
      CHECK(su_rate({p, c, 1.1}) == doctest::Approx(composite_su_rate(p, c, 1.1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("su_rate rejects invalid parameters") {
  CHECK_THROWS_AS(su_rate({-1.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(su_rate({1.0, 1.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(su_rate({1.0, -0.1, 0.0}), std::domain_error);
}

TEST_CASE("su_rate is increasing in power and decreasing in circularity") {
  for (double p : {0.1, 1.0, 5.0, 40.0}) {
    for (double c : {0.0, 0.3, 0.9}) {
      CHECK(su_rate_pc(p + 1e-4, c) > su_rate_pc(p, c));
      if (p > 0.0 && c < 1.0) CHECK(su_rate_pc(p, c + 1e-4) < su_rate_pc(p, c));
    }
  }
}

TEST_CASE("pu_rate examples") {
  CanonicalScenario none = one_user_scenario(100.0, 1.0, 1.0);
  none.gains.clear();
  none.budgets.clear();
  CHECK(pu_rate(none, {}) == doctest::Approx(std::log2(101.0)).epsilon(1e-12));

  const CanonicalScenario sc = one_user_scenario(100.0, 1.0, 1.0);
  std::vector<SignalParams> proper{{10.0, 0.0, 0.0}};
  CHECK(pu_rate(sc, proper) == doctest::Approx(std::log2(111.0 / 11.0)).epsilon(1e-12));

  std::vector<SignalParams> improper{{10.0, 1.0, 0.0}};
  // 0.5*log2[(111^2-100)/(11^2-100)], frozen from the composite oracle.
  CHECK(pu_rate(sc, improper) == doctest::Approx(4.592378648623814).epsilon(1e-12));
  CHECK(pu_rate(sc, improper) ==
        doctest::Approx(composite_pu_rate(100.0, 11.0, {10.0, 0.0})).epsilon(1e-12));
}

TEST_CASE("pu_rate agrees with the composite oracle on mixed phases") {
  CanonicalScenario sc;
  sc.pu_snr = 30.0;
  sc.gains = {0.7, 1.3, 0.2};
  sc.budgets = {50.0, 50.0, 50.0};
  sc.pu_rate_target = 1.0;
  std::vector<SignalParams> params{{3.0, 0.8, 0.4}, {8.0, 0.5, -1.0}, {1.0, 1.0, 2.2}};
  double var = 1.0;
  std::complex<double> comp{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    var += sc.gains[k] * params[k].power;
    comp += sc.gains[k] * params[k].power * params[k].circularity *
            std::polar(1.0, params[k].phase);
  }
  CHECK(pu_rate(sc, params) == doctest::Approx(composite_pu_rate(30.0, var, comp)).epsilon(1e-12));
}

TEST_CASE("pu_rate with proper users collapses to the SINR capacity") {
  PhiloxRng rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    CanonicalScenario sc;
    sc.pu_snr = 200.0 * rng.next_uniform();
    const int k = 1 + static_cast<int>(rng.next_u32() % 4);
    double total = 0.0;
    std::vector<SignalParams> params;
    for (int i = 0; i < k; ++i) {
      sc.gains.push_back(3.0 * rng.next_uniform());
      sc.budgets.push_back(100.0);
      params.push_back({20.0 * rng.next_uniform(), 0.0, 0.0});
      total += sc.gains[i] * params[i].power;
    }
    sc.pu_rate_target = 0.0;
    const double expected = std::log2(1.0 + sc.pu_snr / (1.0 + total));
    CHECK(pu_rate(sc, params) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("pu_rate_improper_noise reduces to pu_rate at unit proper noise") {
  const CanonicalScenario sc = one_user_scenario(100.0, 1.0, 1.0);
  const SignalParams params{10.0, 0.0, 0.0};
  const NoiseState unit{1.0, 0.0};
  CHECK(pu_rate_improper_noise(100.0, 1.0, params, unit) ==
        doctest::Approx(pu_rate(sc, std::vector<SignalParams>{params})).epsilon(1e-13));
}

TEST_CASE("pu_rate_improper_noise with silent secondary") {
  // 0.5*log2[(106^2-2.5^2)/(6^2-2.5^2)], frozen from the composite oracle.
  const NoiseState noise{6.0, 2.5};
  const SignalParams silent{0.0, 0.3, 0.0};
  CHECK(pu_rate_improper_noise(100.0, 0.0, silent, noise) ==
        doctest::Approx(4.280110213317931).epsilon(1e-12));
  CHECK(pu_rate_improper_noise(100.0, 0.0, silent, noise) ==
        doctest::Approx(composite_pu_rate(100.0, 6.0, {2.5, 0.0})).epsilon(1e-12));
}

TEST_CASE("pu_rate grows with the aggregate complementary magnitude") {
  const CanonicalScenario sc = one_user_scenario(50.0, 1.2, 1.0);
  double previous = -1.0;
  for (double c : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const double r = pu_rate(sc, std::vector<SignalParams>{{6.0, c, 0.0}});
    CHECK(r > previous);
    previous = r;
  }
  // and decreases in the interference power at fixed circularity
  CHECK(pu_rate(sc, std::vector<SignalParams>{{7.0, 0.5, 0.0}}) <
        pu_rate(sc, std::vector<SignalParams>{{6.0, 0.5, 0.0}}));
}

TEST_CASE("align_phases maximizes the PU rate") {
  CanonicalScenario sc;
  sc.pu_snr = 80.0;
  sc.gains = {0.9, 1.4};
  sc.budgets = {100.0, 100.0};
  sc.pu_rate_target = 1.0;

  SUBCASE("already aligned input is unchanged") {
    std::vector<SignalParams> params{{4.0, 0.6, 0.0}, {2.0, 0.9, 0.0}};
    const auto aligned = align_phases(params);
    CHECK(aligned[0].phase == 0.0);
    CHECK(aligned[1].phase == 0.0);
    CHECK(pu_rate(sc, aligned) == doctest::Approx(pu_rate(sc, params)).epsilon(1e-15));
  }

  SUBCASE("grid over the second phase peaks at the common phase") {
    std::vector<SignalParams> params{{4.0, 0.6, 0.3}, {2.0, 0.9, -1.1}};
    const auto aligned = align_phases(params);
    CHECK(pu_rate(sc, aligned) >= pu_rate(sc, params));
    for (int i = 0; i <= 64; ++i) {
      std::vector<SignalParams> probe = params;
      probe[0].phase = 0.3;
      probe[1].phase = -kPi + 2.0 * kPi * i / 64.0;
      CHECK(pu_rate(sc, aligned) >= pu_rate(sc, probe) - 1e-12);
    }
  }

  SUBCASE("single user rate is phase invariant") {
    const CanonicalScenario one = one_user_scenario(80.0, 0.9, 1.0);
    const double base = pu_rate(one, std::vector<SignalParams>{{4.0, 0.6, 0.0}});
    for (double phi : {-2.0, 0.4, 3.1}) {
      CHECK(pu_rate(one, std::vector<SignalParams>{{4.0, 0.6, phi}}) ==
            doctest::Approx(base).epsilon(1e-13));
    }
  }

  SUBCASE("random phase vectors never beat alignment") {
    PhiloxRng rng(11, 1);
    std::vector<SignalParams> params{{4.0, 0.6, 0.0}, {2.0, 0.9, 0.0}, {1.0, 0.4, 0.0}};
    CanonicalScenario three = sc;
    three.gains = {0.9, 1.4, 0.3};
    three.budgets = {100.0, 100.0, 100.0};
    const double best = pu_rate(three, align_phases(params));
    for (int trial = 0; trial < 1000; ++trial) {
      auto probe = params;
      for (auto& sp : probe) sp.phase = -kPi + 2.0 * kPi * rng.next_uniform();
      CHECK(best >= pu_rate(three, probe) - 1e-12);
    }
  }
}

TEST_CASE("noise state validity") {
  CHECK(NoiseState{1.0, 0.0}.improper_circularity() == 0.0);
  CHECK(NoiseState{6.0, 2.5}.improper_circularity() == doctest::Approx(0.5));
  CHECK_THROWS_AS((NoiseState{0.5, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((NoiseState{2.0, 1.5}.validate()), std::domain_error);
  CHECK_NOTHROW((NoiseState{2.0, 1.0}.validate()));
}

TEST_CASE("scenario validity") {
  CanonicalScenario sc = one_user_scenario(100.0, 1.0, 3.0);
  CHECK_NOTHROW(sc.validate());
  CHECK(sc.beta() == doctest::Approx(1.0 - 100.0 / (std::exp2(6.0) - 1.0)).epsilon(1e-14));
  sc.pu_rate_target = 7.0;  // above log2(101)
  CHECK_THROWS(sc.validate());
}
