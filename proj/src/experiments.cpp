#include "igsmac/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "igsmac/errors.hpp"
#include "igsmac/rng.hpp"

namespace igsmac {

namespace {

PhysicalScenario two_user_scenario(std::complex<double> h11, std::complex<double> h21,
                                   std::complex<double> h12, std::complex<double> h22,
                                   std::complex<double> h, std::complex<double> g1,
                                   std::complex<double> g2, std::complex<double> gb1,
                                   std::complex<double> gb2, UserOrdering order) {
  PhysicalScenario phys;
  phys.pu_direct = h;
  phys.pu_power = 100.0;
  phys.su_cross = {g1, g2};
  phys.su_direct.resize(2, 2);
  phys.su_direct << h11, h12, h21, h22;
  phys.pu_to_bs.resize(2);
  phys.pu_to_bs << gb1, gb2;
  phys.su_budgets = {100.0, 100.0};
  phys.pu_noise_var = 1.0;
  phys.bs_noise_var = 1.0;
  phys.decode_order = order == UserOrdering::standard ? std::vector<int>{1, 0}
                                                      : std::vector<int>{0, 1};
  set_rate_target_fraction(phys, 0.8);
  return phys;
}

}  // namespace

PhysicalScenario demo_scenario(int id, UserOrdering order) {
  using cd = std::complex<double>;
  switch (id) {
    case 1:
      return two_user_scenario(cd{2.6366, -0.3382}, cd{-1.4428, 1.0861},
                               cd{-2.8824, -0.1728}, cd{-1.7887, 2.0730},
                               cd{-0.8815, 0.4721}, cd{0.0533, 0.2217},
                               cd{0.2221, 0.1991}, cd{0.7618, -1.0175},
                               cd{-0.9464, 0.0233}, order);
    case 2:
      return two_user_scenario(cd{0.1599, -0.9812}, cd{-0.5172, 0.4742},
                               cd{1.0563, 0.8070}, cd{1.1759, 0.9756},
                               cd{0.9445, 0.3284}, cd{0.2908, 0.1358},
                               cd{0.3279, 0.1532}, cd{-0.3066, 0.5856},
                               cd{0.0129, 0.2941}, order);
    case 3:
      return two_user_scenario(cd{2.1257, -3.0397}, cd{0.5401, -0.9356},
                               cd{-0.4956, 0.9835}, cd{2.1329, -0.6720},
                               cd{0.8292, 0.5589}, cd{-0.0869, 0.3653},
                               cd{0.0301, 0.0900}, cd{1.1379, 0.7371},
                               cd{0.2219, -0.2120}, order);
    default:
      throw std::invalid_argument("demo_scenario: id must be 1, 2 or 3");
  }
}

PhysicalScenario gen_rayleigh(int num_users, int num_antennas, std::uint64_t seed,
                              bool zero_pu_cross, std::uint64_t stream) {
  if (num_users < 1 || num_antennas < num_users) {
    throw std::invalid_argument("gen_rayleigh: need num_antennas >= num_users >= 1");
  }
  PhiloxRng rng(seed, stream);
  PhysicalScenario phys;
  phys.pu_direct = rng.next_complex_gaussian();
  phys.pu_power = 100.0;
  phys.su_cross.resize(num_users);
  for (auto& g : phys.su_cross) g = rng.next_complex_gaussian();
  phys.su_direct.resize(num_antennas, num_users);
  for (int col = 0; col < num_users; ++col) {
    for (int row = 0; row < num_antennas; ++row) {
      phys.su_direct(row, col) = rng.next_complex_gaussian();
    }
  }
  phys.pu_to_bs.resize(num_antennas);
  for (int row = 0; row < num_antennas; ++row) {
    phys.pu_to_bs(row) = zero_pu_cross ? std::complex<double>{0.0, 0.0}
                                       : rng.next_complex_gaussian();
  }
  phys.su_budgets.assign(num_users, 100.0);
  phys.pu_noise_var = 1.0;
  phys.bs_noise_var = 1.0;
  phys.pu_rate_target = 0.0;
  return phys;
}

void set_rate_target_fraction(PhysicalScenario& phys, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("rate-target fraction must lie in (0, 1]");
  }
  const double snr = phys.pu_power * std::norm(phys.pu_direct) / phys.pu_noise_var;
  phys.pu_rate_target = fraction * std::log2(1.0 + snr);
}

void ExperimentConfig::validate() const {
  if (num_users < 1) throw std::invalid_argument("experiment: num_users must be >= 1");
  if (num_antennas < num_users) {
    throw std::invalid_argument("experiment: num_antennas must be >= num_users");
  }
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (!(pu_rate_fraction > 0.0 && pu_rate_fraction <= 1.0)) {
    throw std::invalid_argument("experiment: pu_rate_fraction must lie in (0, 1]");
  }
  if (min_users < 1 || max_users < min_users) {
    throw std::invalid_argument("experiment: bad user range");
  }
  if (!(su_budget > 0.0)) throw std::invalid_argument("experiment: su_budget must be > 0");
}

std::vector<double> ExperimentConfig::effective_budget_grid() const {
  if (!budget_grid.empty()) return budget_grid;
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(std::pow(10.0, 0.5 * i));  // 1 .. 1e4
  return grid;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};

MeanSe aggregate(const std::vector<double>& values, const std::vector<char>& ok) {
  std::vector<double> kept;
  kept.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (ok[i]) kept.push_back(values[i]);
  }
  MeanSe out;
  out.count = static_cast<int>(kept.size());
  if (kept.empty()) return out;
  out.mean = pairwise_sum(kept) / out.count;
  if (out.count > 1) {
    std::vector<double> sq(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) {
      sq[i] = (kept[i] - out.mean) * (kept[i] - out.mean);
    }
    out.se = std::sqrt(pairwise_sum(sq) / (out.count - 1)) / std::sqrt(out.count);
  }
  return out;
}

// Runs fn(trial) for trial in [0, n) on a small pool; results land in
// per-trial slots so scheduling cannot affect any output byte.
void run_trials(int n, int threads, const std::function<void(int)>& fn) {
  int pool = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::max(1, std::min(pool, n));
  if (pool == 1) {
    for (int t = 0; t < n; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(pool);
  for (int w = 0; w < pool; ++w) {
    workers.emplace_back([&] {
      for (int t = next.fetch_add(1); t < n; t = next.fetch_add(1)) fn(t);
    });
  }
  for (auto& th : workers) th.join();
}

}  // namespace

ExperimentResult sumrate_vs_budget(const ExperimentConfig& config) {
  config.validate();
  if (static_cast<int>(config.alpha.size()) != config.num_users) {
    throw std::invalid_argument("experiment: alpha must have one weight per user");
  }
  const RateProfile profile{config.alpha};
  profile.validate();
  const std::vector<double> budgets = config.effective_budget_grid();
  const int nb = static_cast<int>(budgets.size());
  const int nt = config.trials;

  std::vector<double> igs(static_cast<size_t>(nb) * nt, 0.0);
  std::vector<double> pgs(static_cast<size_t>(nb) * nt, 0.0);
  std::vector<char> ok(static_cast<size_t>(nb) * nt, 0);

  run_trials(nt, config.threads, [&](int trial) {
    PhysicalScenario phys = gen_rayleigh(config.num_users, config.num_antennas,
                                         config.seed, false, trial);
    set_rate_target_fraction(phys, config.pu_rate_fraction);
    phys.su_budgets.assign(config.num_users, 1.0);
    CanonicalizationResult canon;
    try {
      canon = to_canonical(phys);
    } catch (const InfeasibleError&) {
      return;  // whole trial excluded, per-row counters stay at 0
    }
    for (int b = 0; b < nb; ++b) {
      CanonicalScenario sc = canon.scenario;
      for (double& P : sc.budgets) P *= budgets[b];  // canonical budget scales linearly
      const size_t slot = static_cast<size_t>(b) * nt + trial;
      try {
        SolveOptions opt;
        opt.tol = config.tol;
        opt.mode = SignalingMode::igs;
        igs[slot] = solve_boundary_point(profile, sc, opt).r;
        opt.mode = SignalingMode::pgs;
        pgs[slot] = solve_boundary_point(profile, sc, opt).r;
        ok[slot] = 1;
      } catch (const InfeasibleError&) {
        ok[slot] = 0;
      }
    }
  });

  ExperimentResult out;
  out.name = "sumrate_vs_budget";
  out.config = config;
  for (int b = 0; b < nb; ++b) {
    std::vector<double> ig(igs.begin() + static_cast<size_t>(b) * nt,
                           igs.begin() + static_cast<size_t>(b + 1) * nt);
    std::vector<double> pg(pgs.begin() + static_cast<size_t>(b) * nt,
                           pgs.begin() + static_cast<size_t>(b + 1) * nt);
    std::vector<char> okb(ok.begin() + static_cast<size_t>(b) * nt,
                          ok.begin() + static_cast<size_t>(b + 1) * nt);
    const MeanSe mi = aggregate(ig, okb);
    const MeanSe mp = aggregate(pg, okb);
    CurveRow row;
    row.x = budgets[b];
    row.igs_mean = mi.mean;
    row.igs_se = mi.se;
    row.pgs_mean = mp.mean;
    row.pgs_se = mp.se;
    row.igs_per_user = mi.mean / config.num_users;
    row.pgs_per_user = mp.mean / config.num_users;
    row.trials = mi.count;
    row.infeasible = nt - mi.count;
    out.rows.push_back(row);
  }
  return out;
}

ExperimentResult sumrate_vs_users(const ExperimentConfig& config) {
  config.validate();
  const int nt = config.trials;
  ExperimentResult out;
  out.name = "sumrate_vs_users";
  out.config = config;
  for (int k = config.min_users; k <= config.max_users; ++k) {
    std::vector<double> igs(nt, 0.0);
    std::vector<double> pgs(nt, 0.0);
    std::vector<char> ok(nt, 0);
    const RateProfile profile{std::vector<double>(k, 1.0 / k)};
    run_trials(nt, config.threads, [&](int trial) {
      // Substream split: high bits carry the user count, low bits the trial.
      const std::uint64_t stream = (static_cast<std::uint64_t>(k) << 40) | trial;
      PhysicalScenario phys = gen_rayleigh(k, k, config.seed, true, stream);
      set_rate_target_fraction(phys, config.pu_rate_fraction);
      phys.su_budgets.assign(k, config.su_budget);
      try {
        const CanonicalizationResult canon = to_canonical(phys);
        SolveOptions opt;
        opt.tol = config.tol;
        opt.mode = SignalingMode::igs;
        igs[trial] = solve_boundary_point(profile, canon.scenario, opt).r;
        opt.mode = SignalingMode::pgs;
        pgs[trial] = solve_boundary_point(profile, canon.scenario, opt).r;
        ok[trial] = 1;
      } catch (const InfeasibleError&) {
        ok[trial] = 0;
      }
    });
    const MeanSe mi = aggregate(igs, ok);
    const MeanSe mp = aggregate(pgs, ok);
    CurveRow row;
    row.x = k;
    row.igs_mean = mi.mean;
    row.igs_se = mi.se;
    row.pgs_mean = mp.mean;
    row.pgs_se = mp.se;
    row.igs_per_user = mi.mean / k;
    row.pgs_per_user = mp.mean / k;
    row.trials = mi.count;
    row.infeasible = nt - mi.count;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace igsmac
