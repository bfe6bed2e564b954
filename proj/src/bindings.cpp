#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igsmac/boundary.hpp"
#include "igsmac/canonical.hpp"
#include "igsmac/errors.hpp"
#include "igsmac/experiments.hpp"
#include "igsmac/oracle.hpp"
#include "igsmac/rng.hpp"
#include "igsmac/scenario_io.hpp"
#include "igsmac/single_user.hpp"

namespace py = pybind11;
using namespace igsmac;

#ifndef IGSMAC_VERSION
#define IGSMAC_VERSION "0.0.0"
#endif

PYBIND11_MODULE(_igsmac, m) {
  m.doc() = "improper Gaussian signaling for an underlay secondary MAC: canonical "
            "reduction, closed-form solvers, brute-force oracles and Monte Carlo studies";
  m.attr("__version__") = IGSMAC_VERSION;

  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<DegenerateChannelError>(m, "DegenerateChannelError");
  py::register_exception<DegenerateThresholdError>(m, "DegenerateThresholdError");

  // ---- model -------------------------------------------------------------
  py::class_<SignalParams>(m, "SignalParams")
      .def(py::init<>())
      .def(py::init([](double power, double circularity, double phase) {
             return SignalParams{power, circularity, phase};
           }),
           py::arg("power"), py::arg("circularity") = 0.0, py::arg("phase") = 0.0)
      .def_readwrite("power", &SignalParams::power)
      .def_readwrite("circularity", &SignalParams::circularity)
      .def_readwrite("phase", &SignalParams::phase)
      .def("__repr__", [](const SignalParams& s) {
        return "SignalParams(power=" + fmt_double(s.power) +
               ", circularity=" + fmt_double(s.circularity) +
               ", phase=" + fmt_double(s.phase) + ")";
      });

  py::class_<NoiseState>(m, "NoiseState")
      .def(py::init<>())
      .def(py::init([](double total_variance, double complementary) {
             return NoiseState{total_variance, complementary};
           }),
           py::arg("total_variance") = 1.0, py::arg("complementary") = 0.0)
      .def_readwrite("total_variance", &NoiseState::total_variance)
      .def_readwrite("complementary", &NoiseState::complementary)
      .def_property_readonly("improper_power", &NoiseState::improper_power)
      .def_property_readonly("improper_circularity", &NoiseState::improper_circularity);

  py::class_<CanonicalScenario>(m, "CanonicalScenario")
      .def(py::init<>())
      .def(py::init([](double pu_snr, std::vector<double> gains, std::vector<double> budgets,
                       double pu_rate_target) {
             return CanonicalScenario{pu_snr, std::move(gains), std::move(budgets),
                                      pu_rate_target};
           }),
           py::arg("pu_snr"), py::arg("gains"), py::arg("budgets"), py::arg("pu_rate_target"))
      .def_readwrite("pu_snr", &CanonicalScenario::pu_snr)
      .def_readwrite("gains", &CanonicalScenario::gains)
      .def_readwrite("budgets", &CanonicalScenario::budgets)
      .def_readwrite("pu_rate_target", &CanonicalScenario::pu_rate_target)
      .def_property_readonly("beta", &CanonicalScenario::beta)
      .def_property_readonly("pu_capacity", &CanonicalScenario::pu_capacity)
      .def("validate", &CanonicalScenario::validate);

  m.def("su_rate", &su_rate, py::arg("params"));
  m.def("pu_rate",
        [](const CanonicalScenario& sc, const std::vector<SignalParams>& params) {
          return pu_rate(sc, params);
        },
        py::arg("scenario"), py::arg("all_params"));
  m.def("pu_rate_improper_noise", &pu_rate_improper_noise, py::arg("pu_snr"), py::arg("gain"),
        py::arg("params"), py::arg("noise"));
  m.def("align_phases", &align_phases, py::arg("all_params"));

  // ---- single user -------------------------------------------------------
  py::class_<SingleUserProblem>(m, "SingleUserProblem")
      .def(py::init<>())
      .def(py::init([](double pu_snr, double gain, double budget, double rate_target,
                       const NoiseState& noise) {
             return SingleUserProblem{pu_snr, gain, budget, rate_target, noise};
           }),
           py::arg("pu_snr"), py::arg("gain"), py::arg("budget"), py::arg("rate_target"),
           py::arg("noise") = NoiseState{1.0, 0.0})
      .def_readwrite("pu_snr", &SingleUserProblem::pu_snr)
      .def_readwrite("gain", &SingleUserProblem::gain)
      .def_readwrite("budget", &SingleUserProblem::budget)
      .def_readwrite("rate_target", &SingleUserProblem::rate_target)
      .def_readwrite("noise", &SingleUserProblem::noise)
      .def_property_readonly("beta", &SingleUserProblem::beta)
      .def("feasible", &SingleUserProblem::feasible);

  py::class_<SingleUserSolution>(m, "SingleUserSolution")
      .def_readonly("c_star", &SingleUserSolution::c_star)
      .def_readonly("p_star", &SingleUserSolution::p_star)
      .def_readonly("c_budget", &SingleUserSolution::c_budget)
      .def_readonly("c_peak", &SingleUserSolution::c_peak)
      .def_readonly("gain_threshold", &SingleUserSolution::gain_threshold)
      .def_readonly("su_rate", &SingleUserSolution::su_rate_achieved)
      .def_readonly("pu_rate", &SingleUserSolution::pu_rate_achieved)
      .def_readonly("pu_constraint_inactive", &SingleUserSolution::pu_constraint_inactive);

  m.def("admissible_power", &admissible_power, py::arg("problem"), py::arg("c"));
  m.def("rate_trend", &rate_trend, py::arg("problem"), py::arg("c"));
  m.def("rate_derivative_sign", &rate_derivative_sign, py::arg("problem"), py::arg("c"));
  m.def("igs_gain_threshold", &igs_gain_threshold, py::arg("problem"));
  m.def("budget_circularity", &budget_circularity, py::arg("problem"));
  m.def("peak_circularity", &peak_circularity, py::arg("problem"));
  m.def("solve_single_user", &solve_single_user, py::arg("problem"));

  // ---- boundary ----------------------------------------------------------
  py::enum_<SignalingMode>(m, "SignalingMode")
      .value("igs", SignalingMode::igs)
      .value("pgs", SignalingMode::pgs);

  py::class_<SolveOptions>(m, "SolveOptions")
      .def(py::init<>())
      .def(py::init([](SignalingMode mode, double tol, int max_bisect) {
             return SolveOptions{mode, tol, max_bisect};
           }),
           py::arg("mode") = SignalingMode::igs, py::arg("tol") = 1e-8,
           py::arg("max_bisect") = 60)
      .def_readwrite("mode", &SolveOptions::mode)
      .def_readwrite("tol", &SolveOptions::tol)
      .def_readwrite("max_bisect", &SolveOptions::max_bisect);

  py::class_<RateProfile>(m, "RateProfile")
      .def(py::init([](std::vector<double> weights) { return RateProfile{std::move(weights)}; }),
           py::arg("weights"))
      .def_readwrite("weights", &RateProfile::weights)
      .def("validate", &RateProfile::validate);

  py::class_<FixedUser>(m, "FixedUser")
      .def_readonly("user", &FixedUser::user)
      .def_readonly("params", &FixedUser::params)
      .def_property_readonly("bind", [](const FixedUser& f) {
        switch (f.bind) {
          case FixedUser::Bind::power: return "power";
          case FixedUser::Bind::circularity: return "circularity";
          default: return "rate_cap";
        }
      });

  py::class_<BoundaryPoint>(m, "BoundaryPoint")
      .def_readonly("r", &BoundaryPoint::r)
      .def_readonly("aggregate_c", &BoundaryPoint::aggregate_c)
      .def_readonly("alpha", &BoundaryPoint::alpha)
      .def_readonly("params", &BoundaryPoint::params)
      .def_readonly("rates", &BoundaryPoint::rates)
      .def_readonly("support", &BoundaryPoint::support)
      .def_readonly("saturated_proper", &BoundaryPoint::saturated_proper)
      .def_readonly("fixed", &BoundaryPoint::fixed)
      .def_readonly("equivalent_noise", &BoundaryPoint::equivalent_noise)
      .def_readonly("igs_required", &BoundaryPoint::igs_required)
      .def_readonly("pu_constraint_active", &BoundaryPoint::pu_constraint_active)
      .def_readonly("pu_rate", &BoundaryPoint::pu_rate_achieved);

  py::class_<FeasibilityResult>(m, "FeasibilityResult")
      .def_readonly("feasible", &FeasibilityResult::feasible)
      .def_readonly("slack", &FeasibilityResult::slack)
      .def_readonly("point", &FeasibilityResult::point);

  m.def("tolerable_interference", &tolerable_interference, py::arg("c"), py::arg("noise"),
        py::arg("pu_snr"), py::arg("rate_target"));
  m.def("igs_required",
        [](const CanonicalScenario& sc, const std::vector<int>& active,
           const std::vector<int>& support) { return igs_required(sc, active, support); },
        py::arg("scenario"), py::arg("active"), py::arg("support"));
  m.def("unsaturated_users", &unsaturated_users, py::arg("scenario"), py::arg("profile"),
        py::arg("r_star"));
  m.def("user_params_from_c",
        [](double c, double r, const RateProfile& profile, const std::vector<int>& active,
           const NoiseState& noise, const CanonicalScenario& sc) {
          return user_params_from_c(c, r, profile, active, noise, sc);
        },
        py::arg("c"), py::arg("r"), py::arg("profile"), py::arg("active"), py::arg("noise"),
        py::arg("scenario"));
  m.def("solve_feasibility", &solve_feasibility, py::arg("r"), py::arg("profile"),
        py::arg("scenario"), py::arg("options") = SolveOptions{});
  m.def("solve_boundary_point", &solve_boundary_point, py::arg("profile"), py::arg("scenario"),
        py::arg("options") = SolveOptions{});
  m.def("sweep_region", &sweep_region, py::arg("scenario"), py::arg("n_points"),
        py::arg("mode") = SignalingMode::igs, py::arg("tol") = 1e-8);
  m.def("time_sharing_hull",
        [](const std::vector<std::array<double, 2>>& a,
           const std::vector<std::array<double, 2>>& b) { return time_sharing_hull(a, b); },
        py::arg("region_a"), py::arg("region_b"));
  m.def("frontier_value_at",
        [](const std::vector<std::array<double, 2>>& frontier, double x) {
          return frontier_value_at(frontier, x);
        },
        py::arg("frontier"), py::arg("x"));
  m.def("max_constraint_violation", &max_constraint_violation, py::arg("point"),
        py::arg("scenario"));

  // ---- canonicalization ----------------------------------------------------
  py::class_<PhysicalScenario>(m, "PhysicalScenario")
      .def(py::init<>())
      .def_readwrite("pu_direct", &PhysicalScenario::pu_direct)
      .def_readwrite("pu_power", &PhysicalScenario::pu_power)
      .def_readwrite("su_cross", &PhysicalScenario::su_cross)
      // explicit copy in/out for the Eigen members: value semantics, no views
      .def_property(
          "su_direct",
          [](const PhysicalScenario& p) -> Eigen::MatrixXcd { return p.su_direct; },
          [](PhysicalScenario& p, Eigen::MatrixXcd h) { p.su_direct = std::move(h); })
      .def_property(
          "pu_to_bs",
          [](const PhysicalScenario& p) -> Eigen::VectorXcd { return p.pu_to_bs; },
          [](PhysicalScenario& p, Eigen::VectorXcd g) { p.pu_to_bs = std::move(g); })
      .def_readwrite("su_budgets", &PhysicalScenario::su_budgets)
      .def_readwrite("pu_noise_var", &PhysicalScenario::pu_noise_var)
      .def_readwrite("bs_noise_var", &PhysicalScenario::bs_noise_var)
      .def_readwrite("pu_rate_target", &PhysicalScenario::pu_rate_target)
      .def_readwrite("decode_order", &PhysicalScenario::decode_order)
      .def("validate", &PhysicalScenario::validate);

  py::class_<QrFactors>(m, "QrFactors")
      .def_property_readonly("q",
                             [](const QrFactors& f) -> Eigen::MatrixXcd { return f.q; })
      .def_property_readonly("r",
                             [](const QrFactors& f) -> Eigen::MatrixXcd { return f.r; });

  py::class_<CanonicalizationResult>(m, "CanonicalizationResult")
      .def_readonly("scenario", &CanonicalizationResult::scenario)
      .def_property_readonly(
          "zf_q", [](const CanonicalizationResult& c) -> Eigen::MatrixXcd { return c.zf_q; })
      .def_property_readonly(
          "zf_r", [](const CanonicalizationResult& c) -> Eigen::MatrixXcd { return c.zf_r; })
      .def_readonly("per_user_noise", &CanonicalizationResult::per_user_noise)
      .def_readonly("decode_order", &CanonicalizationResult::decode_order);

  m.def("qr_decompose", &qr_decompose, py::arg("h"));
  m.def("to_canonical", &to_canonical, py::arg("scenario"));

  // ---- oracles ---------------------------------------------------------------
  py::class_<SingleUserBrute>(m, "SingleUserBrute")
      .def_readonly("any_feasible", &SingleUserBrute::any_feasible)
      .def_readonly("best_rate", &SingleUserBrute::best_rate)
      .def_readonly("best_power", &SingleUserBrute::best_power)
      .def_readonly("best_circularity", &SingleUserBrute::best_circularity);

  py::class_<BoundaryBrute>(m, "BoundaryBrute")
      .def_readonly("any_feasible", &BoundaryBrute::any_feasible)
      .def_readonly("r_lower_bound", &BoundaryBrute::r_lower_bound)
      .def_readonly("best", &BoundaryBrute::best);

  m.def("brute_single_user", &brute_single_user, py::arg("problem"), py::arg("grid_n"),
        py::call_guard<py::gil_scoped_release>());
  m.def("brute_boundary", &brute_boundary, py::arg("profile"), py::arg("scenario"),
        py::arg("grid_n"), py::call_guard<py::gil_scoped_release>());

  // ---- experiments -------------------------------------------------------------
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("num_users", &ExperimentConfig::num_users)
      .def_readwrite("num_antennas", &ExperimentConfig::num_antennas)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("pu_rate_fraction", &ExperimentConfig::pu_rate_fraction)
      .def_readwrite("alpha", &ExperimentConfig::alpha)
      .def_readwrite("budget_grid", &ExperimentConfig::budget_grid)
      .def_readwrite("min_users", &ExperimentConfig::min_users)
      .def_readwrite("max_users", &ExperimentConfig::max_users)
      .def_readwrite("su_budget", &ExperimentConfig::su_budget)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_readwrite("tol", &ExperimentConfig::tol);

  py::class_<CurveRow>(m, "CurveRow")
      .def_readonly("x", &CurveRow::x)
      .def_readonly("igs_mean", &CurveRow::igs_mean)
      .def_readonly("igs_se", &CurveRow::igs_se)
      .def_readonly("pgs_mean", &CurveRow::pgs_mean)
      .def_readonly("pgs_se", &CurveRow::pgs_se)
      .def_readonly("igs_per_user", &CurveRow::igs_per_user)
      .def_readonly("pgs_per_user", &CurveRow::pgs_per_user)
      .def_readonly("trials", &CurveRow::trials)
      .def_readonly("infeasible", &CurveRow::infeasible);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("name", &ExperimentResult::name)
      .def_readonly("config", &ExperimentResult::config)
      .def_readonly("rows", &ExperimentResult::rows)
      .def("to_csv", [](const ExperimentResult& r) { return experiment_to_csv(r); })
      .def("manifest_json",
           [](const ExperimentResult& r) { return experiment_manifest_json(r); });

  py::enum_<UserOrdering>(m, "UserOrdering")
      .value("standard", UserOrdering::standard)
      .value("swapped", UserOrdering::swapped);

  m.def("demo_scenario", &demo_scenario, py::arg("id"),
        py::arg("order") = UserOrdering::standard);
  m.def("gen_rayleigh", &gen_rayleigh, py::arg("num_users"), py::arg("num_antennas"),
        py::arg("seed"), py::arg("zero_pu_cross") = false, py::arg("stream") = 0);
  m.def("set_rate_target_fraction", &set_rate_target_fraction, py::arg("scenario"),
        py::arg("fraction"));
  m.def("sumrate_vs_budget", &sumrate_vs_budget, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sumrate_vs_users", &sumrate_vs_users, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  // ---- scenario files ------------------------------------------------------------
  m.def("load_physical_scenario", &load_physical_scenario, py::arg("path"));
  m.def("parse_physical_scenario", &parse_physical_scenario, py::arg("text"));
  m.def("physical_scenario_to_json", &physical_scenario_to_json, py::arg("scenario"));
}
