#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "igsmac/boundary.hpp"
#include "igsmac/canonical.hpp"
#include "igsmac/errors.hpp"
#include "igsmac/experiments.hpp"
#include "igsmac/oracle.hpp"
#include "igsmac/rng.hpp"
#include "igsmac/scenario_io.hpp"
#include "igsmac/single_user.hpp"
#include "igsmac/svg_plot.hpp"

#include <json.hpp>

using namespace igsmac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerification = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  out << text;
}

struct ScenarioArgs {
  std::string file;
  int preset = 0;
  std::string order = "default";
  bool zero_g = false;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--scenario", file, "scenario JSON file (see schema/scenario.json)");
    auto* p = cmd->add_option("--preset", preset, "built-in two-user scenario id (1..3)")
                  ->check(CLI::Range(1, 3));
    f->excludes(p);
    cmd->add_option("--order", order, "decoding order: default (last user first) or swapped")
        ->check(CLI::IsMember({"default", "swapped"}));
    cmd->add_flag("--zero-g", zero_g, "zero the PU-to-BS channel before canonicalizing");
  }

  PhysicalScenario load() const {
    PhysicalScenario phys;
    if (preset > 0) {
      phys = demo_scenario(preset, order == "swapped" ? UserOrdering::swapped
                                                       : UserOrdering::standard);
    } else if (!file.empty()) {
      phys = load_physical_scenario(file);
      if (order == "swapped") {
        std::vector<int> rev = phys.effective_decode_order();
        std::reverse(rev.begin(), rev.end());
        phys.decode_order = rev;
      }
    } else {
      throw std::invalid_argument("provide --scenario FILE or --preset N");
    }
    if (zero_g) phys.pu_to_bs.setZero();
    return phys;
  }
};

std::vector<std::array<double, 2>> rate_pairs(const std::vector<BoundaryPoint>& pts) {
  std::vector<std::array<double, 2>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({p.rates[0], p.rates[1]});
  return out;
}

int cmd_canonical(const ScenarioArgs& args, const std::string& format,
                  const std::string& out_path) {
  const CanonicalizationResult canon = to_canonical(args.load());
  emit(format == "table" ? canonical_to_table(canon) : canonical_to_json(canon), out_path);
  return kExitOk;
}

int cmd_single_user(const SingleUserProblem& prob, int sweep_n, const std::string& format,
                    const std::string& out_path) {
  const SingleUserSolution sol = solve_single_user(prob);
  if (sweep_n > 1) {
    // normalized-rate profile over the circularity coefficient
    const double proper = su_rate_pc(std::min(admissible_power(prob, 0.0), prob.budget), 0.0);
    std::vector<std::array<double, 2>> curve;
    std::ostringstream csv;
    csv << "# single-user rate sweep; q is the admissible power at c; rates in b/s/Hz\n";
    csv << "# p=" << fmt_double(prob.pu_snr) << " aS=" << fmt_double(prob.gain)
        << " PS=" << fmt_double(prob.budget) << " R=" << fmt_double(prob.rate_target)
        << " pI=" << fmt_double(prob.improper_power())
        << " cI=" << fmt_double(prob.improper_circularity()) << "\n";
    csv << "c,q,su_rate,normalized\n";
    for (int i = 0; i < sweep_n; ++i) {
      const double c = static_cast<double>(i) / (sweep_n - 1);
      const double q = std::min(admissible_power(prob, c), prob.budget);
      const double rate = su_rate_pc(q, c);
      curve.push_back({c, rate / proper});
      csv << fmt_double(c) << "," << fmt_double(q) << "," << fmt_double(rate) << ","
          << fmt_double(rate / proper) << "\n";
    }
    if (format == "svg") {
      emit(render_svg_plot("single-user rate vs circularity", "c", "rate / proper rate",
                           {{"normalized rate", "#1f77b4", curve}}),
           out_path);
    } else {
      emit(csv.str(), out_path);
    }
    return kExitOk;
  }
  if (format == "table") {
    std::ostringstream out;
    out << "single-user optimum\n";
    out << "  c_budget        = " << fmt_double(sol.c_budget) << "\n";
    out << "  c_peak          = " << fmt_double(sol.c_peak) << "\n";
    out << "  gain_threshold  = "
        << (std::isnan(sol.gain_threshold) ? "n/a" : fmt_double(sol.gain_threshold)) << "\n";
    out << "  c_star          = " << fmt_double(sol.c_star) << "\n";
    out << "  p_star          = " << fmt_double(sol.p_star) << "\n";
    out << "  su_rate         = " << fmt_double(sol.su_rate_achieved) << " b/s/Hz\n";
    out << "  pu_rate         = " << fmt_double(sol.pu_rate_achieved) << " b/s/Hz\n";
    if (sol.pu_constraint_inactive) out << "  PU constraint inactive (gain = 0)\n";
    emit(out.str(), out_path);
  } else {
    nlohmann::json j;
    j["c_budget"] = sol.c_budget;
    j["c_peak"] = sol.c_peak;
    j["gain_threshold"] = std::isnan(sol.gain_threshold)
                              ? nlohmann::json()
                              : nlohmann::json(sol.gain_threshold);
    j["c_star"] = sol.c_star;
    j["p_star"] = sol.p_star;
    j["su_rate"] = sol.su_rate_achieved;
    j["pu_rate"] = sol.pu_rate_achieved;
    j["pu_constraint_inactive"] = sol.pu_constraint_inactive;
    emit(j.dump(2), out_path);
  }
  return kExitOk;
}

int cmd_boundary(const ScenarioArgs& args, const std::vector<double>& alpha, int sweep_n,
                 const std::string& mode, bool hull, double tol, const std::string& format,
                 const std::string& out_path, const std::string& flags_echo) {
  SolveOptions opts;
  opts.mode = mode == "pgs" ? SignalingMode::pgs : SignalingMode::igs;
  opts.tol = tol;
  const PhysicalScenario phys = args.load();
  const CanonicalScenario scenario = to_canonical(phys).scenario;

  if (!alpha.empty()) {
    RateProfile profile{alpha};
    const BoundaryPoint pt = solve_boundary_point(profile, scenario, opts);
    if (format == "csv") {
      emit(boundary_points_to_csv({pt}, scenario, flags_echo), out_path);
    } else {
      emit(boundary_point_to_json(pt, scenario), out_path);
    }
    return kExitOk;
  }

  const int n = sweep_n > 1 ? sweep_n : 33;
  const auto points = sweep_region(scenario, n, opts.mode, tol);
  std::vector<SvgSeries> series;
  series.push_back({mode == "pgs" ? "PGS" : "IGS", "#1f77b4", rate_pairs(points)});

  std::optional<std::vector<std::array<double, 2>>> hull_frontier;
  if (hull) {
    PhysicalScenario other = phys;
    std::vector<int> rev = phys.effective_decode_order();
    std::reverse(rev.begin(), rev.end());
    other.decode_order = rev;
    const auto other_points = sweep_region(to_canonical(other).scenario, n, opts.mode, tol);
    hull_frontier = time_sharing_hull(rate_pairs(points), rate_pairs(other_points));
    series.push_back({"other order", "#888888", rate_pairs(other_points)});
    series.push_back({"time-sharing hull", "#d62728", *hull_frontier});
  }

  if (format == "svg") {
    emit(render_svg_plot("rate region boundary", "R_1 (b/s/Hz)", "R_2 (b/s/Hz)", series),
         out_path);
  } else if (format == "json") {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : points) {
      pts.push_back(nlohmann::json::parse(boundary_point_to_json(pt, scenario)));
    }
    nlohmann::json root;
    root["points"] = pts;
    if (hull_frontier) {
      nlohmann::json h = nlohmann::json::array();
      for (const auto& p : *hull_frontier) h.push_back({p[0], p[1]});
      root["time_sharing_hull"] = h;
    }
    emit(root.dump(2), out_path);
  } else {
    std::string text = boundary_points_to_csv(points, scenario, flags_echo);
    if (hull_frontier) {
      std::ostringstream extra;
      extra << text << "# time-sharing hull vertices\nR_1,R_2\n";
      for (const auto& p : *hull_frontier) {
        extra << fmt_double(p[0]) << "," << fmt_double(p[1]) << "\n";
      }
      text = extra.str();
    }
    emit(text, out_path);
  }
  return kExitOk;
}

int cmd_verify(const ScenarioArgs& args, std::uint64_t random_seed, bool have_random,
               int num_users, int count, int grid_n, std::vector<double> alpha, double tol) {
  int failures = 0;
  std::ostringstream report;
  if (have_random && num_users == 1) {
    PhiloxRng rng(random_seed, 0);
    double worst = 0.0;
    for (int trial = 0; trial < count; ++trial) {
      const SingleUserProblem prob = [&] {
        for (;;) {
          SingleUserProblem p;
          p.pu_snr = 1.0 + 299.0 * rng.next_uniform();
          p.gain = 0.05 + 4.95 * rng.next_uniform();
          p.budget = 0.5 + 199.5 * rng.next_uniform();
          p.rate_target = (0.3 + 0.65 * rng.next_uniform()) * std::log2(1.0 + p.pu_snr);
          const double pi = 8.0 * rng.next_uniform();
          p.noise = NoiseState{1.0 + pi, pi * rng.next_uniform()};
          if (p.feasible()) return p;
        }
      }();
      const SingleUserBrute brute = brute_single_user(prob, grid_n);
      const SingleUserSolution sol = solve_single_user(prob);
      const double delta = brute.best_rate - sol.su_rate_achieved;
      worst = std::max(worst, delta);
      if (delta > 1e-6) ++failures;
    }
    report << "single-user oracle: " << count << " instances, grid " << grid_n
           << ", worst oracle-minus-solver delta " << fmt_double(worst) << " b/s/Hz\n";
  } else if (have_random) {
    throw std::invalid_argument("--random batches support K = 1 only; pass --scenario or "
                                "--preset for multiuser verification");
  } else {
    const CanonicalScenario scenario = to_canonical(args.load()).scenario;
    if (alpha.empty()) alpha.assign(scenario.num_users(), 1.0 / scenario.num_users());
    const RateProfile profile{alpha};
    const BoundaryBrute brute = brute_boundary(profile, scenario, grid_n);
    SolveOptions opts;
    opts.tol = tol;
    const BoundaryPoint pt = solve_boundary_point(profile, scenario, opts);
    report << "boundary oracle: grid " << grid_n << ", solver r = " << fmt_double(pt.r)
           << ", oracle lower bound = " << fmt_double(brute.r_lower_bound) << "\n";
    const double violation = max_constraint_violation(pt, scenario);
    report << "constraint residual at solver point: " << fmt_double(violation) << "\n";
    if (brute.r_lower_bound > pt.r + 1e-9) ++failures;  // a grid point beat the solver
    if (violation > 1e-8) ++failures;
  }
  report << (failures == 0 ? "verify: OK\n" : "verify: FAILED\n");
  std::cout << report.str();
  return failures == 0 ? kExitOk : kExitVerification;
}

int cmd_experiment(const std::string& name, const ExperimentConfig& config,
                   const std::string& out_prefix) {
  ExperimentResult result;
  if (name == "fig7") {
    result = sumrate_vs_budget(config);
  } else if (name == "fig8") {
    result = sumrate_vs_users(config);
  } else {
    throw std::invalid_argument("unknown experiment '" + name + "' (use fig7 or fig8)");
  }
  if (out_prefix.empty()) {
    std::cout << experiment_to_csv(result);
    std::cout << experiment_manifest_json(result) << "\n";
  } else {
    emit(experiment_to_csv(result), out_prefix + ".csv");
    emit(experiment_manifest_json(result), out_prefix + ".manifest.json");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"improper Gaussian signaling for an underlay secondary MAC: canonical "
               "reduction, closed-form solvers, oracles and Monte Carlo studies"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write output to this path instead of stdout");

  auto* canonical = app.add_subcommand("canonical", "reduce a scenario to canonical form");
  ScenarioArgs canonical_args;
  canonical_args.attach(canonical);
  std::string canonical_format = "json";
  canonical->add_option("--format", canonical_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  auto* single = app.add_subcommand("single-user", "solve the single-user problem");
  SingleUserProblem prob;
  double opt_pi = 0.0;
  double opt_ci = 0.0;
  int sweep_c = 0;
  std::string single_format = "table";
  single->add_option("--p", prob.pu_snr, "PU SNR p")->required();
  single->add_option("--aS", prob.gain, "interference gain a_S")->required();
  single->add_option("--PS", prob.budget, "SU power budget P_S")->required();
  single->add_option("--R", prob.rate_target, "PU rate target (b/s/Hz)")->required();
  single->add_option("--pI", opt_pi, "improper-noise power (default 0)");
  single->add_option("--cI", opt_ci, "improper-noise circularity (default 0)");
  single->add_option("--sweep-c", sweep_c, "emit the rate-vs-circularity sweep with N points");
  single->add_option("--format", single_format, "table, json, csv or svg (sweep)")
      ->check(CLI::IsMember({"table", "json", "csv", "svg"}));

  auto* boundary = app.add_subcommand("boundary", "solve rate-region boundary points");
  ScenarioArgs boundary_args;
  boundary_args.attach(boundary);
  std::vector<double> alpha;
  int sweep_n = 0;
  std::string mode = "igs";
  bool hull = false;
  double tol = 1e-8;
  std::string boundary_format = "csv";
  boundary->add_option("--alpha", alpha, "rate profile weights (one point)")->delimiter(',');
  boundary->add_option("--sweep", sweep_n, "sweep alpha_1 over N points (2-user scenarios)");
  boundary->add_option("--mode", mode, "igs or pgs")->check(CLI::IsMember({"igs", "pgs"}));
  boundary->add_flag("--hull", hull, "add the time-sharing hull over both decode orders");
  boundary->add_option("--tol", tol, "bisection tolerance on r (b/s/Hz)");
  boundary->add_option("--format", boundary_format, "csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  auto* verify = app.add_subcommand("verify", "compare solvers against brute-force oracles");
  ScenarioArgs verify_args;
  verify_args.attach(verify);
  std::uint64_t random_seed = 0;
  int verify_users = 1;
  int verify_count = 100;
  int grid_n = 201;
  std::vector<double> verify_alpha;
  double verify_tol = 1e-8;
  auto* random_opt =
      verify->add_option("--random", random_seed, "random single-user batch with this seed");
  verify->add_option("--K", verify_users, "user count for --random batches");
  verify->add_option("--count", verify_count, "number of random instances");
  verify->add_option("--grid", grid_n, "oracle grid resolution per dimension");
  verify->add_option("--alpha", verify_alpha, "rate profile for the boundary oracle")
      ->delimiter(',');
  verify->add_option("--tol", verify_tol, "solver bisection tolerance");

  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo study");
  std::string exp_name;
  ExperimentConfig config;
  experiment->add_option("name", exp_name, "fig7 (sum rate vs budget) or fig8 (vs users)")
      ->required();
  experiment->add_option("--trials", config.trials, "Monte Carlo trials (default 200)");
  experiment->add_option("--seed", config.seed, "RNG seed");
  experiment->add_option("--threads", config.threads, "worker threads (0 = hardware)");
  experiment->add_option("--fraction", config.pu_rate_fraction,
                         "PU rate target as a capacity fraction");
  experiment->add_option("--budgets", config.budget_grid, "budget grid for fig7")
      ->delimiter(',');
  experiment->add_option("--alpha", config.alpha, "rate profile for fig7")->delimiter(',');
  experiment->add_option("--users", config.num_users, "user count K for fig7");
  experiment->add_option("--antennas", config.num_antennas, "antenna count N for fig7");
  experiment->add_option("--kmin", config.min_users, "smallest user count for fig8");
  experiment->add_option("--kmax", config.max_users, "largest user count for fig8");
  experiment->add_option("--budget", config.su_budget, "per-user budget for fig8");
  experiment->add_option("--tol", config.tol, "solver bisection tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitInput;
  }

  try {
    if (canonical->parsed()) return cmd_canonical(canonical_args, canonical_format, out_path);
    if (single->parsed()) {
      prob.noise = NoiseState{1.0 + opt_pi, opt_pi * opt_ci};
      const std::string fmt = sweep_c > 1 && single_format == "table" ? "csv" : single_format;
      return cmd_single_user(prob, sweep_c, fmt, out_path);
    }
    if (boundary->parsed()) {
      std::ostringstream flags;
      flags << "mode=" << mode << " tol=" << fmt_double(tol) << (hull ? " hull=1" : "")
            << (boundary_args.preset ? " preset=" + std::to_string(boundary_args.preset)
                                     : " scenario=" + boundary_args.file)
            << " order=" << boundary_args.order;
      if (!alpha.empty()) {
        flags << " alpha=";
        for (size_t i = 0; i < alpha.size(); ++i) flags << (i ? "," : "") << alpha[i];
      } else {
        flags << " sweep=" << (sweep_n > 1 ? sweep_n : 33);
      }
      return cmd_boundary(boundary_args, alpha, sweep_n, mode, hull, tol, boundary_format,
                          out_path, flags.str());
    }
    if (verify->parsed()) {
      return cmd_verify(verify_args, random_seed, random_opt->count() > 0, verify_users,
                        verify_count, grid_n, verify_alpha, verify_tol);
    }
    if (experiment->parsed()) return cmd_experiment(exp_name, config, out_path);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const DegenerateChannelError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
