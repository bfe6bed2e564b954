#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "igsmac/model.hpp"

namespace igsmac {

/// Raw system description: complex channels, transmit powers and noise
/// variances, before the zero-forcing reduction.
struct PhysicalScenario {
  std::complex<double> pu_direct;                ///< h
  double pu_power = 0.0;                         ///< p' > 0
  std::vector<std::complex<double>> su_cross;    ///< g_k, size K
  Eigen::MatrixXcd su_direct;                    ///< H, N x K with N >= K
  Eigen::VectorXcd pu_to_bs;                     ///< g, size N
  std::vector<double> su_budgets;                ///< P'_k > 0
  double pu_noise_var = 1.0;                     ///< sigma^2 > 0
  double bs_noise_var = 1.0;                     ///< sigma_BS^2 > 0
  double pu_rate_target = 0.0;                   ///< protected PU rate, b/s/Hz
  /// 0-based user indices in decoding order (first entry decoded first).
  /// Defaults to reversed user indexes when empty.
  std::vector<int> decode_order;

  int num_users() const { return static_cast<int>(su_cross.size()); }
  int num_antennas() const { return static_cast<int>(su_direct.rows()); }
  std::vector<int> effective_decode_order() const;
  void validate() const;
};

struct QrFactors {
  Eigen::MatrixXcd q;  ///< N x K, orthonormal columns
  Eigen::MatrixXcd r;  ///< K x K upper triangular, real positive diagonal
};

/// Thin QR with the diagonal of R fixed real positive, so per-stream gains
/// |r_k| are unambiguous.  Throws DegenerateChannelError when a diagonal
/// entry falls below 1e-12 * ||H||_F.
QrFactors qr_decompose(const Eigen::MatrixXcd& h);

struct CanonicalizationResult {
  CanonicalScenario scenario;           ///< gains/budgets indexed by original user
  Eigen::MatrixXcd zf_q;                ///< Q of the permuted channel matrix
  Eigen::MatrixXcd zf_r;                ///< R of the permuted channel matrix
  std::vector<double> per_user_noise;   ///< sigma_k^2 by original user index
  std::vector<int> decode_order;        ///< 0-based, first decoded first
};

/// Reduces the physical scenario to unit-gain unit-noise form: the PU keeps
/// SNR p = p'|h|^2/sigma^2 and each SU k enters through gain a_k, budget P_k
/// and its equalized noise sigma_k^2.
CanonicalizationResult to_canonical(const PhysicalScenario& phys);

}  // namespace igsmac
