#include "igsmac/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace igsmac {

SingleUserBrute brute_single_user(const SingleUserProblem& prob, int grid_n) {
  prob.validate();
  if (grid_n < 2) throw std::invalid_argument("brute_single_user: grid_n must be >= 2");
  const double pi = prob.improper_power();
  const double ptilde = prob.noise.complementary;
  SingleUserBrute out;
  for (int ip = 0; ip < grid_n; ++ip) {
    const double p = prob.budget * ip / (grid_n - 1);
    const double ap = prob.gain * p;
    for (int ic = 0; ic < grid_n; ++ic) {
      const double c = static_cast<double>(ic) / (grid_n - 1);
      const double pu = pu_rate_aggregate(prob.pu_snr, ap + pi, ap * c + ptilde);
      if (pu < prob.rate_target) continue;
      const double su = su_rate_pc(p, c);
      if (!out.any_feasible || su > out.best_rate) {
        out.any_feasible = true;
        out.best_rate = su;
        out.best_power = p;
        out.best_circularity = c;
      }
    }
  }
  return out;
}

namespace {

struct UserGrid {
  int user = -1;
  double alpha = 0.0;
  std::vector<double> power;          // grid_n power levels
  std::vector<double> rate;           // grid_n * grid_n rates, [ip * grid_n + ic]
};

}  // namespace

BoundaryBrute brute_boundary(const RateProfile& profile, const CanonicalScenario& scenario,
                             int grid_n) {
  profile.validate();
  scenario.validate();
  if (profile.num_users() != scenario.num_users()) {
    throw std::invalid_argument("brute_boundary: profile size must match user count");
  }
  if (grid_n < 2) throw std::invalid_argument("brute_boundary: grid_n must be >= 2");

  std::vector<int> support;
  for (int k = 0; k < scenario.num_users(); ++k) {
    if (profile.weights[k] > 0.0) support.push_back(k);
  }
  const int ku = static_cast<int>(support.size());
  if (ku > 3) {
    const double evals = std::pow(static_cast<double>(grid_n), 2.0 * ku);
    throw std::invalid_argument(
        "brute_boundary: refusing " + std::to_string(ku) + " active users; the grid has ~" +
        std::to_string(evals) + " points (cost grows as grid_n^(2K))");
  }

  std::vector<double> circ(grid_n);
  for (int ic = 0; ic < grid_n; ++ic) circ[ic] = static_cast<double>(ic) / (grid_n - 1);

  std::vector<UserGrid> grids(ku);
  for (int i = 0; i < ku; ++i) {
    const int k = support[i];
    grids[i].user = k;
    grids[i].alpha = profile.weights[k];
    grids[i].power.resize(grid_n);
    grids[i].rate.resize(static_cast<size_t>(grid_n) * grid_n);
    for (int ip = 0; ip < grid_n; ++ip) {
      const double p = scenario.budgets[k] * ip / (grid_n - 1);
      grids[i].power[ip] = p;
      for (int ic = 0; ic < grid_n; ++ic) {
        grids[i].rate[static_cast<size_t>(ip) * grid_n + ic] = su_rate_pc(p, circ[ic]);
      }
    }
  }

  BoundaryBrute out;
  std::vector<int> pick(2 * ku, 0);  // (ip, ic) per active user

  // Depth-first over the per-user grids, pruning once the running
  // min_k R_k / alpha_k can no longer beat the incumbent.
  auto descend = [&](auto&& self, int level, double interference, double complementary,
                     double ratio_so_far) -> void {
    if (level == ku) {
      const double pu = pu_rate_aggregate(scenario.pu_snr, interference, complementary);
      if (pu < scenario.pu_rate_target) return;
      if (!out.any_feasible || ratio_so_far > out.r_lower_bound) {
        out.any_feasible = true;
        out.r_lower_bound = ratio_so_far;
        out.best.assign(scenario.num_users(), SignalParams{});
        for (int i = 0; i < ku; ++i) {
          out.best[grids[i].user] =
              SignalParams{grids[i].power[pick[2 * i]], circ[pick[2 * i + 1]], 0.0};
        }
      }
      return;
    }
    const UserGrid& g = grids[level];
    const double a = scenario.gains[g.user];
    for (int ip = 0; ip < grid_n; ++ip) {
      for (int ic = 0; ic < grid_n; ++ic) {
        const double ratio =
            std::min(ratio_so_far, g.rate[static_cast<size_t>(ip) * grid_n + ic] / g.alpha);
        if (out.any_feasible && ratio <= out.r_lower_bound) continue;
        pick[2 * level] = ip;
        pick[2 * level + 1] = ic;
        self(self, level + 1, interference + a * g.power[ip],
             complementary + a * g.power[ip] * circ[ic], ratio);
      }
    }
  };
  descend(descend, 0, 0.0, 0.0, std::numeric_limits<double>::infinity());
  if (out.any_feasible && out.best.empty()) {
    out.best.assign(scenario.num_users(), SignalParams{});
  }
  return out;
}

}  // namespace igsmac
