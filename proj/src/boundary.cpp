#include "igsmac/boundary.hpp"

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
// Ties between a user's rate cap log2(1+P_k) and its target alpha_k r are
// treated as saturation within this window.
constexpr double kSaturationTol = 1e-9;

double sum_over(std::span<const int> idx, const std::vector<double>& v) {
  double s = 0.0;
  for (int k : idx) s += v[k];
  return s;
}

SingleUserProblem stage_problem(std::span<const int> active, const NoiseState& rho,
                                const CanonicalScenario& sc) {
  SingleUserProblem prob;
  prob.pu_snr = sc.pu_snr;
  prob.gain = sum_over(active, sc.gains);
  prob.budget = std::max(sum_over(active, sc.budgets), 1e-300);
  prob.rate_target = sc.pu_rate_target;
  prob.noise = rho;
  return prob;
}

// Tight-allocation family: every active user's power is
// p_k = 2^{alpha_k r} (1+q) / sqrt((1+q)^2 - (qc)^2) - 1, and its circularity
// follows from holding the user's rate at exactly alpha_k r.  Values are not
// clamped here so root finding can see bound crossings.
struct FamilyPoint {
  double power;
  double circularity;
};

FamilyPoint family_params(double q, double c, double alpha_r) {
  const double e = std::exp2(alpha_r);
  if (c == 0.0) return {e - 1.0, 0.0};
  if (std::isinf(q)) {
    // q -> inf limit; the power bound is crossed long before this matters.
    return {kInf, c / (1.0 - std::sqrt(std::max(1.0 - c * c, 0.0)) / e)};
  }
  const double s = std::sqrt((1.0 + q) * (1.0 + q) - q * c * q * c);
  return {e * (1.0 + q) / s - 1.0, q * c / (1.0 + q - s / e)};
}

// log2 headroom of the equivalent user over the aggregate rate demand.
double accept_slack(double q, double c, double r, const RateProfile& profile,
                    std::span<const int> active, const CanonicalScenario& sc) {
  if (std::isinf(q)) return kInf;
  double demand = 0.0;
  for (int k : active) demand += sc.gains[k] * std::exp2(profile.weights[k] * r);
  const double gain_sum = sum_over(active, sc.gains);
  if (demand <= 0.0) return kInf;  // all active gains zero: PU cannot be hurt
  return su_rate_pc(q, c) - std::log2(demand / gain_sum);
}

bool noise_state_feasible(const NoiseState& rho, const CanonicalScenario& sc) {
  SingleUserProblem probe;
  probe.pu_snr = sc.pu_snr;
  probe.gain = 1.0;
  probe.budget = 1.0;
  probe.rate_target = sc.pu_rate_target;
  probe.noise = rho;
  return probe.feasible();
}

struct StageState {
  std::vector<int> active;
  NoiseState rho;
  std::vector<FixedUser> fixed;
  std::vector<int> saturated;
  std::vector<int> support;
};

BoundaryPoint assemble_point(double r, const RateProfile& profile,
                             const CanonicalScenario& sc, const StageState& st,
                             const std::vector<SignalParams>& active_params) {
  BoundaryPoint pt;
  pt.r = r;
  pt.alpha = profile.weights;
  pt.support = st.support;
  pt.saturated_proper = st.saturated;
  pt.fixed = st.fixed;
  pt.equivalent_noise = st.rho;
  pt.params.assign(sc.num_users(), SignalParams{});
  for (int k : st.saturated) pt.params[k] = SignalParams{sc.budgets[k], 0.0, 0.0};
  for (const FixedUser& f : st.fixed) pt.params[f.user] = f.params;
  for (size_t i = 0; i < st.active.size(); ++i) pt.params[st.active[i]] = active_params[i];
  pt.rates.resize(sc.num_users());
  double interference = 0.0;
  double complementary = 0.0;
  for (int k = 0; k < sc.num_users(); ++k) {
    pt.rates[k] = su_rate_pc(pt.params[k].power, pt.params[k].circularity);
    interference += sc.gains[k] * pt.params[k].power;
    complementary += sc.gains[k] * pt.params[k].power * pt.params[k].circularity;
  }
  pt.aggregate_c = interference > 0.0 ? complementary / interference : 0.0;
  pt.pu_rate_achieved = pu_rate_aggregate(sc.pu_snr, interference, complementary);
  pt.pu_constraint_active = pt.pu_rate_achieved <= sc.pu_rate_target + 1e-6;
  return pt;
}

}  // namespace

void RateProfile::validate() const {
  if (weights.empty()) throw std::invalid_argument("rate profile: no users");
  double sum = 0.0;
  for (double a : weights) {
    if (!(a >= 0.0)) throw std::invalid_argument("rate profile: weights must be >= 0");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("rate profile: weights must sum to 1, got " +
                                std::to_string(sum));
  }
}

double tolerable_interference(double c, const NoiseState& noise, double pu_snr,
                              double rate_target) {
  SingleUserProblem prob;
  prob.pu_snr = pu_snr;
  prob.gain = 1.0;
  prob.budget = 1.0;
  prob.rate_target = rate_target;
  prob.noise = noise;
  return admissible_power(prob, c);
}

std::vector<int> unsaturated_users(const CanonicalScenario& scenario,
                                   const RateProfile& profile, double r_star) {
  std::vector<int> out;
  for (int k = 0; k < scenario.num_users(); ++k) {
    if (profile.weights[k] <= 0.0) continue;
    if (std::log2(1.0 + scenario.budgets[k]) > profile.weights[k] * r_star + kSaturationTol) {
      out.push_back(k);
    }
  }
  return out;
}

bool igs_required(const CanonicalScenario& scenario, std::span<const int> active,
                  std::span<const int> support) {
  double active_gain = 0.0;
  for (int k : active) active_gain += scenario.gains[k];
  double saturated_interference = 0.0;
  for (int k : support) {
    if (std::find(active.begin(), active.end(), k) == active.end()) {
      saturated_interference += scenario.gains[k] * scenario.budgets[k];
    }
  }
  return active_gain >= saturated_interference + scenario.beta();
}

std::vector<SignalParams> user_params_from_c(double c, double r, const RateProfile& profile,
                                             std::span<const int> active,
                                             const NoiseState& noise,
                                             const CanonicalScenario& scenario) {
  if (active.empty()) return {};
  const SingleUserProblem prob = stage_problem(active, noise, scenario);
  const double q = admissible_power(prob, c);
  if (std::isinf(q)) {
    throw std::invalid_argument("user_params_from_c: tolerable interference is unbounded "
                                "at this circularity; the tight family is undefined");
  }
  std::vector<SignalParams> out;
  out.reserve(active.size());
  for (int k : active) {
    const FamilyPoint fp = family_params(q, c, profile.weights[k] * r);
    // budget-binding points reproduce P_k only to relative rounding; clamp so
    // the box constraints hold exactly (a real overshoot would show up as a
    // rate shortfall instead)
    out.push_back(SignalParams{std::clamp(fp.power, 0.0, scenario.budgets[k]),
                               std::clamp(fp.circularity, 0.0, 1.0), 0.0});
  }
  return out;
}

NextActivation next_activation(double c_hi, double r, const RateProfile& profile,
                               std::span<const int> active, const NoiseState& noise,
                               const CanonicalScenario& scenario) {
  NextActivation out;
  if (active.empty()) return out;
  const SingleUserProblem prob = stage_problem(active, noise, scenario);

  // Power side: p_k(c) shares G(c) across users, so the smallest
  // (P_k + 1) 2^{-alpha_k r} pins the first power root.
  int k_p = active[0];
  double g_req = kInf;
  for (int k : active) {
    const double need = (scenario.budgets[k] + 1.0) * std::exp2(-profile.weights[k] * r);
    if (need < g_req) {
      g_req = need;
      k_p = k;
    }
  }
  int k_legacy = active[0];
  double legacy_best = kInf;
  for (int k : active) {
    const double need = (scenario.budgets[k] - 1.0) * std::exp2(-profile.weights[k] * r);
    if (need < legacy_best) {
      legacy_best = need;
      k_legacy = k;
    }
  }
  out.legacy_rule_agrees = (k_legacy == k_p);

  double c_power = kInf;
  auto power_gap = [&](double c) {
    return family_params(admissible_power(prob, c), c, profile.weights[k_p] * r).power -
           scenario.budgets[k_p];
  };
  if (power_gap(c_hi) >= 0.0) {
    c_power = detail::first_root_scan(power_gap, 0.0, c_hi, 64, 1e-12, c_hi);
  }

  // Circularity side: c_k(c) grows fastest for the smallest profile weight.
  int k_c = active[0];
  for (int k : active) {
    if (profile.weights[k] < profile.weights[k_c]) k_c = k;
  }
  double c_circ = kInf;
  auto circ_gap = [&](double c) {
    return family_params(admissible_power(prob, c), c, profile.weights[k_c] * r).circularity -
           1.0;
  };
  if (circ_gap(c_hi) >= 0.0) {
    c_circ = detail::first_root_scan(circ_gap, 0.0, c_hi, 64, 1e-12, c_hi);
  }

  if (std::isinf(c_power) && std::isinf(c_circ)) {
    out.kind = NextActivation::Kind::none;
    out.c_prime = c_hi;
    return out;
  }
  if (c_power < c_circ) {
    out.kind = NextActivation::Kind::power;
    out.user = k_p;
    out.c_prime = c_power;
  } else {
    out.kind = NextActivation::Kind::circularity;
    out.user = k_c;
    out.c_prime = c_circ;
  }
  return out;
}

FeasibilityResult solve_feasibility(double r, const RateProfile& profile,
                                    const CanonicalScenario& scenario,
                                    const SolveOptions& opts) {
  profile.validate();
  scenario.validate();
  if (profile.num_users() != scenario.num_users()) {
    throw std::invalid_argument("solve_feasibility: profile size must match user count");
  }
  if (!(r >= 0.0)) throw std::invalid_argument("solve_feasibility: r must be >= 0");

  FeasibilityResult res;
  res.slack = -kInf;

  StageState st;
  for (int k = 0; k < scenario.num_users(); ++k) {
    if (profile.weights[k] > 0.0) st.support.push_back(k);
  }
  st.rho = NoiseState{1.0, 0.0};
  for (int k : st.support) {
    const double cap = std::log2(1.0 + scenario.budgets[k]);
    const double need = profile.weights[k] * r;
    if (need > cap + kSaturationTol) return res;  // user cannot reach its share
    if (std::abs(cap - need) <= kSaturationTol) {
      st.saturated.push_back(k);
      st.rho.total_variance += scenario.gains[k] * scenario.budgets[k];
    } else {
      st.active.push_back(k);
    }
  }

  const int max_rounds = static_cast<int>(st.active.size()) + 1;
  for (int round = 0; round < max_rounds; ++round) {
    if (st.active.empty()) {
      if (!noise_state_feasible(st.rho, scenario)) return res;
      res.feasible = true;
      res.slack = kInf;
      res.point = assemble_point(r, profile, scenario, st, {});
      return res;
    }
    const SingleUserProblem prob = stage_problem(st.active, st.rho, scenario);
    if (!prob.feasible()) return res;

    // PU-inactive fast path: the remaining users fit even at full budgets.
    const double q0 = admissible_power(prob, 0.0);
    const double t0 = std::isinf(q0) ? kInf : prob.gain * q0;
    double full_load = 0.0;
    for (int k : st.active) full_load += scenario.gains[k] * scenario.budgets[k];
    if (full_load <= t0) {
      std::vector<SignalParams> params;
      params.reserve(st.active.size());
      for (int k : st.active) {
        params.push_back(SignalParams{
            std::min(std::exp2(profile.weights[k] * r) - 1.0, scenario.budgets[k]), 0.0,
            0.0});
      }
      res.feasible = true;
      res.slack = kInf;
      res.point = assemble_point(r, profile, scenario, st, params);
      return res;
    }

    const double c_star = opts.mode == SignalingMode::pgs
                              ? 0.0
                              : solve_single_user(prob).c_star;
    const NextActivation act =
        next_activation(1.0, r, profile, st.active, st.rho, scenario);

    if (act.kind == NextActivation::Kind::none || c_star <= act.c_prime) {
      const double q = admissible_power(prob, c_star);
      res.slack = accept_slack(q, c_star, r, profile, st.active, scenario);
      if (res.slack < 0.0) return res;
      res.feasible = true;
      res.point = assemble_point(
          r, profile, scenario, st,
          user_params_from_c(c_star, r, profile, st.active, st.rho, scenario));
      return res;
    }

    // Pin the binding user at c' with its rate share met exactly, fold its
    // interference into the equivalent noise, and rerun on the smaller set.
    FixedUser fu;
    fu.user = act.user;
    const double ar = profile.weights[act.user] * r;
    if (act.kind == NextActivation::Kind::power) {
      const double P = scenario.budgets[act.user];
      const double c2 = std::max((1.0 + P) * (1.0 + P) - std::exp2(2.0 * ar), 0.0);
      fu.params = SignalParams{P, std::min(std::sqrt(c2) / P, 1.0), 0.0};
      fu.bind = FixedUser::Bind::power;
    } else {
      const double p = std::min(0.5 * (std::exp2(2.0 * ar) - 1.0),
                                scenario.budgets[act.user]);
      fu.params = SignalParams{p, p > 0.0 ? 1.0 : 0.0, 0.0};
      fu.bind = FixedUser::Bind::circularity;
    }
    st.fixed.push_back(fu);
    st.rho.total_variance += scenario.gains[fu.user] * fu.params.power;
    st.rho.complementary +=
        scenario.gains[fu.user] * fu.params.power * fu.params.circularity;
    std::erase(st.active, fu.user);
  }
  throw std::logic_error("solve_feasibility: activation loop failed to terminate");
}

BoundaryPoint solve_boundary_point(const RateProfile& profile,
                                   const CanonicalScenario& scenario,
                                   const SolveOptions& opts) {
  profile.validate();
  scenario.validate();
  if (profile.num_users() != scenario.num_users()) {
    throw std::invalid_argument("solve_boundary_point: profile size must match user count");
  }

  double r_cap = kInf;
  for (int k = 0; k < scenario.num_users(); ++k) {
    if (profile.weights[k] > 0.0) {
      r_cap = std::min(r_cap, std::log2(1.0 + scenario.budgets[k]) / profile.weights[k]);
    }
  }

  auto finalize = [&](BoundaryPoint pt) {
    const std::vector<int> active = unsaturated_users(scenario, profile, pt.r);
    pt.igs_required = igs_required(scenario, active, pt.support);
    return pt;
  };

  FeasibilityResult at_cap = solve_feasibility(r_cap, profile, scenario, opts);
  if (at_cap.feasible) return finalize(std::move(*at_cap.point));

  double lo = 0.0;
  double hi = r_cap;
  FeasibilityResult best = solve_feasibility(0.0, profile, scenario, opts);
  if (!best.feasible) {
    throw InfeasibleError("solve_boundary_point: even r = 0 is infeasible");
  }
  double f_lo = best.slack;
  double f_hi = at_cap.slack;
  for (int i = 0; i < opts.max_bisect && hi - lo > opts.tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityResult res = solve_feasibility(mid, profile, scenario, opts);
    if (res.feasible) {
      lo = mid;
      f_lo = res.slack;
      best = std::move(res);
    } else {
      hi = mid;
      f_hi = res.slack;
    }
  }

  // Slack polish: regula falsi on the accept-step headroom, so the
  // materialized point sits essentially on the PU constraint instead of up
  // to `tol` inside it.
  const double width_floor = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi);
  for (int i = 0; i < 60 && f_lo > 1e-13 && hi - lo > width_floor; ++i) {
    double r_new;
    if (std::isfinite(f_lo) && std::isfinite(f_hi)) {
      r_new = lo + f_lo * (hi - lo) / (f_lo - f_hi);
      const double nudge = 0.01 * (hi - lo);
      r_new = std::clamp(r_new, lo + 0.01 * nudge, hi - 0.01 * nudge);
    } else {
      r_new = 0.5 * (lo + hi);
    }
    FeasibilityResult res = solve_feasibility(r_new, profile, scenario, opts);
    if (res.feasible) {
      lo = r_new;
      f_lo = res.slack;
      best = std::move(res);
    } else {
      hi = r_new;
      f_hi = res.slack;
    }
  }
  return finalize(std::move(*best.point));
}

std::vector<BoundaryPoint> sweep_region(const CanonicalScenario& scenario, int n_points,
                                        SignalingMode mode, double tol) {
  scenario.validate();
  if (scenario.num_users() != 2) {
    throw std::invalid_argument("sweep_region: only 2-user sweeps are supported");
  }
  if (n_points < 2) throw std::invalid_argument("sweep_region: need at least 2 points");
  SolveOptions opts;
  opts.mode = mode;
  opts.tol = tol;
  std::vector<BoundaryPoint> out;
  out.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double a1 = static_cast<double>(i) / (n_points - 1);
    RateProfile profile{{a1, 1.0 - a1}};
    out.push_back(solve_boundary_point(profile, scenario, opts));
  }
  std::sort(out.begin(), out.end(),
            [](const BoundaryPoint& a, const BoundaryPoint& b) { return a.rates[0] < b.rates[0]; });
  return out;
}

std::vector<std::array<double, 2>> time_sharing_hull(
    std::span<const std::array<double, 2>> region_a,
    std::span<const std::array<double, 2>> region_b) {
  std::vector<std::array<double, 2>> pts(region_a.begin(), region_a.end());
  pts.insert(pts.end(), region_b.begin(), region_b.end());
  if (pts.empty()) return {};
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] > b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Drop dominated duplicates sharing an abscissa (keep the highest).
  std::vector<std::array<double, 2>> unique_x;
  for (const auto& p : pts) {
    if (!unique_x.empty() && unique_x.back()[0] == p[0]) continue;
    unique_x.push_back(p);
  }
  // Upper hull, keeping collinear vertices so sampling density survives.
  std::vector<std::array<double, 2>> hull;
  auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                  const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  for (const auto& p : unique_x) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) > 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

double frontier_value_at(std::span<const std::array<double, 2>> frontier, double x) {
  if (frontier.empty()) return 0.0;
  if (x <= frontier.front()[0]) return frontier.front()[1];
  if (x >= frontier.back()[0]) return frontier.back()[1];
  for (size_t i = 1; i < frontier.size(); ++i) {
    if (x <= frontier[i][0]) {
      const double x0 = frontier[i - 1][0];
      const double x1 = frontier[i][0];
      const double y0 = frontier[i - 1][1];
      const double y1 = frontier[i][1];
      if (x1 == x0) return std::max(y0, y1);
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return frontier.back()[1];
}

double max_constraint_violation(const BoundaryPoint& point,
                                const CanonicalScenario& scenario) {
  double worst = 0.0;
  for (int k = 0; k < scenario.num_users(); ++k) {
    const SignalParams& sp = point.params[k];
    worst = std::max(worst, -sp.power);
    worst = std::max(worst, sp.power - scenario.budgets[k]);
    worst = std::max(worst, -sp.circularity);
    worst = std::max(worst, sp.circularity - 1.0);
    if (point.alpha[k] > 0.0) {
      worst = std::max(worst, point.alpha[k] * point.r -
                                  su_rate_pc(sp.power, sp.circularity));
    } else {
      worst = std::max(worst, sp.power);  // silent users must stay silent
    }
  }
  worst = std::max(worst, scenario.pu_rate_target - point.pu_rate_achieved);
  return worst;
}

}  // namespace igsmac
