#include "igsmac/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "igsmac/errors.hpp"

namespace igsmac {

std::vector<int> PhysicalScenario::effective_decode_order() const {
  if (!decode_order.empty()) return decode_order;
  std::vector<int> order(num_users());
  std::iota(order.rbegin(), order.rend(), 0);  // reversed user indexes
  return order;
}

void PhysicalScenario::validate() const {
  const int k = num_users();
  if (k < 1) throw std::invalid_argument("scenario: need at least one secondary user");
  if (su_direct.cols() != k) {
    throw std::invalid_argument("scenario: su_direct_matrix must have one column per user");
  }
  if (su_direct.rows() < k) {
    throw std::invalid_argument("scenario: base station needs at least as many antennas "
                                "as users (N >= K)");
  }
  if (pu_to_bs.size() != su_direct.rows()) {
    throw std::invalid_argument("scenario: pu_to_bs must have one entry per antenna");
  }
  if (static_cast<int>(su_budgets.size()) != k) {
    throw std::invalid_argument("scenario: su_budgets must have one entry per user");
  }
  if (!(pu_power > 0.0)) throw std::invalid_argument("scenario: pu_power must be > 0");
  for (double p : su_budgets) {
    if (!(p > 0.0)) throw std::invalid_argument("scenario: su_budgets must be > 0");
  }
  if (!(pu_noise_var > 0.0) || !(bs_noise_var > 0.0)) {
    throw std::invalid_argument("scenario: noise variances must be > 0");
  }
  if (!(pu_rate_target >= 0.0)) {
    throw std::invalid_argument("scenario: pu_rate_target must be >= 0");
  }
  if (!decode_order.empty()) {
    if (static_cast<int>(decode_order.size()) != k) {
      throw std::invalid_argument("scenario: decode_order must list every user once");
    }
    std::vector<bool> seen(k, false);
    for (int u : decode_order) {
      if (u < 0 || u >= k || seen[u]) {
        throw std::invalid_argument("scenario: decode_order must be a permutation of the users");
      }
      seen[u] = true;
    }
  }
}

QrFactors qr_decompose(const Eigen::MatrixXcd& h) {
  const int k = static_cast<int>(h.cols());
  if (h.rows() < h.cols() || k < 1) {
    throw std::invalid_argument("qr_decompose: need an N x K matrix with N >= K >= 1");
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(h.rows(), k);
  Eigen::MatrixXcd r =
      qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // Rotate each stream so the diagonal of R is real positive.
  const double scale = h.norm();
  for (int j = 0; j < k; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) < 1e-12 * scale) {
      throw DegenerateChannelError("qr_decompose: channel matrix is rank deficient at "
                                   "stream " + std::to_string(j));
    }
    const std::complex<double> phase = d / std::abs(d);
    r.row(j) *= std::conj(phase);
    q.col(j) *= phase;
  }
  return {std::move(q), std::move(r)};
}

CanonicalizationResult to_canonical(const PhysicalScenario& phys) {
  phys.validate();
  const int k = phys.num_users();
  const std::vector<int> order = phys.effective_decode_order();

  // Stream j of the cancellation chain carries user order[j]: the channel
  // matrix is column-permuted into decoding order before the QR.
  Eigen::MatrixXcd permuted(phys.su_direct.rows(), k);
  std::vector<int> user_of_column(k);
  for (int j = 0; j < k; ++j) {
    const int user = order[j];
    permuted.col(j) = phys.su_direct.col(user);
    user_of_column[j] = user;
  }
  QrFactors qr = qr_decompose(permuted);

  CanonicalizationResult out;
  out.decode_order = order;
  out.zf_q = std::move(qr.q);
  out.zf_r = std::move(qr.r);
  out.per_user_noise.assign(k, 0.0);

  CanonicalScenario& sc = out.scenario;
  sc.pu_snr = phys.pu_power * std::norm(phys.pu_direct) / phys.pu_noise_var;
  sc.pu_rate_target = phys.pu_rate_target;
  sc.gains.assign(k, 0.0);
  sc.budgets.assign(k, 0.0);
  for (int j = 0; j < k; ++j) {
    const int user = user_of_column[j];
    const double r_gain = std::norm(out.zf_r(j, j));
    const double equalized_noise =
        phys.pu_power * std::norm(out.zf_q.col(j).dot(phys.pu_to_bs)) + phys.bs_noise_var;
    out.per_user_noise[user] = equalized_noise;
    sc.gains[user] = equalized_noise * std::norm(phys.su_cross[user]) /
                     (phys.pu_noise_var * r_gain);
    sc.budgets[user] = phys.su_budgets[user] * r_gain / equalized_noise;
  }
  sc.validate();  // reports an infeasible PU rate target
  return out;
}

}  // namespace igsmac
