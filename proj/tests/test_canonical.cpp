#include "igsmac/canonical.hpp"

#include <cmath>
#include <complex>
#include <doctest.h>

#include "igsmac/errors.hpp"
#include "igsmac/experiments.hpp"
#include "igsmac/rng.hpp"

using namespace igsmac;

namespace {

Eigen::MatrixXcd random_matrix(PhiloxRng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = rng.next_complex_gaussian();
  }
  return m;
}

}  // namespace

TEST_CASE("qr_decompose basics") {
  SUBCASE("identity") {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
    const QrFactors qr = qr_decompose(eye);
    CHECK((qr.q - eye).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((qr.r - eye).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("diagonal with a complex phase") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = {2.0, 0.0};
    h(1, 1) = {0.0, 3.0};
    const QrFactors qr = qr_decompose(h);
    CHECK(qr.r(0, 0).real() == doctest::Approx(2.0));
    CHECK(qr.r(1, 1).real() == doctest::Approx(3.0));
    CHECK(qr.r(0, 0).imag() == doctest::Approx(0.0));
    CHECK(qr.r(1, 1).imag() == doctest::Approx(0.0));
    CHECK((qr.q * qr.r - h).norm() <= 1e-12);
  }
  SUBCASE("thin factorization of random tall matrices") {
    PhiloxRng rng(3, 0);
    for (int trial = 0; trial < 25; ++trial) {
      const int k = 1 + static_cast<int>(rng.next_u32() % 4);
      const int n = k + static_cast<int>(rng.next_u32() % 3);
      const Eigen::MatrixXcd h = random_matrix(rng, n, k);
      const QrFactors qr = qr_decompose(h);
      CHECK((qr.q * qr.r - h).norm() <= 1e-10 * h.norm());
      CHECK((qr.q.adjoint() * qr.q - Eigen::MatrixXcd::Identity(k, k)).norm() <= 1e-10);
      for (int j = 0; j < k; ++j) {
        CHECK(qr.r(j, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(qr.r(j, j).real() > 0.0);
      }
    }
  }
  SUBCASE("rank deficiency is rejected") {
    Eigen::MatrixXcd h(2, 2);
    h << std::complex<double>{1.0, 0.0}, std::complex<double>{2.0, 0.0},
        std::complex<double>{1.0, 0.0}, std::complex<double>{2.0, 0.0};
    CHECK_THROWS_AS(qr_decompose(h), DegenerateChannelError);
  }
}

TEST_CASE("demo scenarios match their golden canonical tuples") {
  struct Golden {
    int id;
    double a1_standard, a2_standard;
    double a1_swapped, a2_swapped;
  };
  const Golden golden[] = {
      {1, 0.52, 0.89, 0.788, 0.592},
      {2, 1.03, 1.31, 1.829, 0.995},
      {3, 1.41, 0.09, 1.684, 0.028},
  };
  for (const Golden& g : golden) {
    CAPTURE(g.id);
    const CanonicalizationResult std_order = to_canonical(demo_scenario(g.id));
    CHECK(std_order.scenario.pu_rate_target == doctest::Approx(5.33).epsilon(0.01 / 5.33));
    CHECK(std_order.scenario.beta() == doctest::Approx(0.94).epsilon(0.01 / 0.94));
    CHECK(std_order.scenario.gains[0] == doctest::Approx(g.a1_standard).epsilon(0.02 / g.a1_standard));
    CHECK(std_order.scenario.gains[1] == doctest::Approx(g.a2_standard).epsilon(0.02 / g.a2_standard));
    const CanonicalizationResult swapped =
        to_canonical(demo_scenario(g.id, UserOrdering::swapped));
    CHECK(swapped.scenario.gains[0] == doctest::Approx(g.a1_swapped).epsilon(0.02 / g.a1_swapped));
    CHECK(swapped.scenario.gains[1] == doctest::Approx(g.a2_swapped).epsilon(0.02 / g.a2_swapped));
  }
}

TEST_CASE("scale invariance of the canonical reduction") {
  const PhysicalScenario base = demo_scenario(1);
  PhysicalScenario scaled = base;
  const double lambda = 3.7;
  scaled.pu_power *= lambda;
  for (double& p : scaled.su_budgets) p *= lambda;
  scaled.pu_noise_var *= lambda;
  scaled.bs_noise_var *= lambda;

  const CanonicalizationResult a = to_canonical(base);
  const CanonicalizationResult b = to_canonical(scaled);
  CHECK(b.scenario.pu_snr == doctest::Approx(a.scenario.pu_snr).epsilon(1e-12));
  for (int k = 0; k < 2; ++k) {
    CHECK(b.scenario.gains[k] == doctest::Approx(a.scenario.gains[k]).epsilon(1e-12));
    CHECK(b.scenario.budgets[k] == doctest::Approx(a.scenario.budgets[k]).epsilon(1e-12));
  }
  CHECK(b.scenario.beta() == doctest::Approx(a.scenario.beta()).epsilon(1e-12));
}

TEST_CASE("canonical SU rate equals the physical ZF-SIC rate for proper signals") {
  PhiloxRng rng(5, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u32() % 3);
    const int n = k + static_cast<int>(rng.next_u32() % 2);
    PhysicalScenario phys;
    phys.pu_direct = rng.next_complex_gaussian();
    phys.pu_power = 50.0 + 100.0 * rng.next_uniform();
    phys.su_direct = random_matrix(rng, n, k);
    phys.pu_to_bs.resize(n);
    for (int i = 0; i < n; ++i) phys.pu_to_bs(i) = rng.next_complex_gaussian();
    for (int i = 0; i < k; ++i) {
      phys.su_cross.push_back(rng.next_complex_gaussian());
      phys.su_budgets.push_back(10.0 + 50.0 * rng.next_uniform());
    }
    phys.pu_noise_var = 0.5 + rng.next_uniform();
    phys.bs_noise_var = 0.5 + rng.next_uniform();
    phys.pu_rate_target = 0.5 * std::log2(1.0 + phys.pu_power * std::norm(phys.pu_direct) /
                                                    phys.pu_noise_var);
    const CanonicalizationResult canon = to_canonical(phys);

    const std::vector<int> order = phys.effective_decode_order();
    for (int j = 0; j < k; ++j) {
      const int user = order[j];
      // Physical post-equalization SNR of stream j, straight from the
      // equalized signal model.
      const double num = phys.su_budgets[user] * std::norm(canon.zf_r(j, j));
      const double den =
          phys.pu_power * std::norm(canon.zf_q.col(j).dot(phys.pu_to_bs)) + phys.bs_noise_var;
      const double physical_rate = std::log2(1.0 + num / den);
      const double canonical_rate =
          su_rate_pc(canon.scenario.budgets[user], 0.0);
      CHECK(canonical_rate == doctest::Approx(physical_rate).epsilon(1e-9));
    }
  }
}

TEST_CASE("decode order permutes canonical quantities consistently") {
  const PhysicalScenario base = demo_scenario(2);
  // Relabel the users (1 <-> 2) and decode the same physical user first as
  // the swapped-order baseline; canonical quantities must relabel along.
  PhysicalScenario relabeled = base;
  relabeled.su_direct.col(0) = base.su_direct.col(1);
  relabeled.su_direct.col(1) = base.su_direct.col(0);
  relabeled.su_cross = {base.su_cross[1], base.su_cross[0]};
  relabeled.su_budgets = {base.su_budgets[1], base.su_budgets[0]};
  relabeled.decode_order = {1, 0};
  PhysicalScenario swapped = base;
  swapped.decode_order = {0, 1};

  const CanonicalizationResult a = to_canonical(swapped);
  const CanonicalizationResult b = to_canonical(relabeled);
  CHECK(a.scenario.gains[0] == doctest::Approx(b.scenario.gains[1]).epsilon(1e-12));
  CHECK(a.scenario.gains[1] == doctest::Approx(b.scenario.gains[0]).epsilon(1e-12));
  CHECK(a.scenario.budgets[0] == doctest::Approx(b.scenario.budgets[1]).epsilon(1e-12));
  CHECK(a.scenario.budgets[1] == doctest::Approx(b.scenario.budgets[0]).epsilon(1e-12));
}

TEST_CASE("infeasible PU target is reported") {
  PhysicalScenario phys = demo_scenario(1);
  phys.pu_rate_target = 10.0;  // above log2(1 + p)
  CHECK_THROWS_AS(to_canonical(phys), InfeasibleError);
}

TEST_CASE("validation rejects malformed scenarios") {
  PhysicalScenario phys = demo_scenario(1);
  phys.su_direct.resize(1, 2);  // N < K
  CHECK_THROWS(to_canonical(phys));
  PhysicalScenario bad_order = demo_scenario(1);
  bad_order.decode_order = {0, 0};
  CHECK_THROWS(to_canonical(bad_order));
}
