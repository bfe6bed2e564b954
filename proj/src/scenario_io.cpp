#include "igsmac/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef IGSMAC_VERSION
#define IGSMAC_VERSION "0.0.0"
#endif
#ifndef IGSMAC_GIT_DESCRIBE
#define IGSMAC_GIT_DESCRIBE "unknown"
#endif

namespace igsmac {

namespace {

using nlohmann::json;

std::complex<double> parse_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("scenario field '" + field +
                                "': complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

const json& require(const json& root, const std::string& field) {
  auto it = root.find(field);
  if (it == root.end()) {
    throw std::invalid_argument("scenario: missing required field '" + field + "'");
  }
  return *it;
}

}  // namespace

namespace {

PhysicalScenario parse_scenario_fields(const json& root);

}  // namespace

PhysicalScenario parse_physical_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("scenario: top level must be an object");
  try {
    return parse_scenario_fields(root);
  } catch (const json::exception& e) {
    // wrong value types and similar shape errors
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
}

namespace {

PhysicalScenario parse_scenario_fields(const json& root) {
  PhysicalScenario phys;
  phys.pu_direct = parse_complex(require(root, "pu_direct"), "pu_direct");
  phys.pu_power = require(root, "pu_power").get<double>();

  const json& cross = require(root, "su_cross");
  if (!cross.is_array() || cross.empty()) {
    throw std::invalid_argument("scenario: su_cross must be a non-empty array");
  }
  for (const auto& entry : cross) phys.su_cross.push_back(parse_complex(entry, "su_cross"));
  const int k = static_cast<int>(phys.su_cross.size());

  const json& hmat = require(root, "su_direct_matrix");
  if (!hmat.is_array() || hmat.empty()) {
    throw std::invalid_argument("scenario: su_direct_matrix must be an array of rows");
  }
  const int n = static_cast<int>(hmat.size());
  phys.su_direct.resize(n, k);
  for (int row = 0; row < n; ++row) {
    if (!hmat[row].is_array() || static_cast<int>(hmat[row].size()) != k) {
      throw std::invalid_argument("scenario: su_direct_matrix row " + std::to_string(row) +
                                  " must have one complex entry per user");
    }
    for (int col = 0; col < k; ++col) {
      phys.su_direct(row, col) = parse_complex(hmat[row][col], "su_direct_matrix");
    }
  }

  const json& g = require(root, "pu_to_bs");
  if (!g.is_array() || static_cast<int>(g.size()) != n) {
    throw std::invalid_argument("scenario: pu_to_bs must have one entry per antenna row");
  }
  phys.pu_to_bs.resize(n);
  for (int row = 0; row < n; ++row) phys.pu_to_bs(row) = parse_complex(g[row], "pu_to_bs");

  const json& budgets = require(root, "su_budgets");
  if (!budgets.is_array() || static_cast<int>(budgets.size()) != k) {
    throw std::invalid_argument("scenario: su_budgets must have one entry per user");
  }
  for (const auto& b : budgets) phys.su_budgets.push_back(b.get<double>());

  phys.pu_noise_var = require(root, "pu_noise_var").get<double>();
  phys.bs_noise_var = require(root, "bs_noise_var").get<double>();

  const bool has_target = root.contains("pu_rate_target");
  const bool has_fraction = root.contains("pu_rate_fraction");
  if (has_target == has_fraction) {
    throw std::invalid_argument(
        "scenario: provide exactly one of pu_rate_target or pu_rate_fraction");
  }
  if (has_target) {
    phys.pu_rate_target = root["pu_rate_target"].get<double>();
  } else {
    set_rate_target_fraction(phys, root["pu_rate_fraction"].get<double>());
  }

  if (root.contains("decode_order")) {
    for (const auto& u : root["decode_order"]) {
      phys.decode_order.push_back(u.get<int>() - 1);  // file is 1-based
    }
  }
  phys.validate();
  return phys;
}

}  // namespace

PhysicalScenario load_physical_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_physical_scenario(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string physical_scenario_to_json(const PhysicalScenario& phys) {
  json root;
  root["pu_direct"] = complex_to_json(phys.pu_direct);
  root["pu_power"] = phys.pu_power;
  json cross = json::array();
  for (auto z : phys.su_cross) cross.push_back(complex_to_json(z));
  root["su_cross"] = cross;
  json hmat = json::array();
  for (int row = 0; row < phys.su_direct.rows(); ++row) {
    json r = json::array();
    for (int col = 0; col < phys.su_direct.cols(); ++col) {
      r.push_back(complex_to_json(phys.su_direct(row, col)));
    }
    hmat.push_back(r);
  }
  root["su_direct_matrix"] = hmat;
  json g = json::array();
  for (int row = 0; row < phys.pu_to_bs.size(); ++row) {
    g.push_back(complex_to_json(phys.pu_to_bs(row)));
  }
  root["pu_to_bs"] = g;
  root["su_budgets"] = phys.su_budgets;
  root["pu_noise_var"] = phys.pu_noise_var;
  root["bs_noise_var"] = phys.bs_noise_var;
  root["pu_rate_target"] = phys.pu_rate_target;
  json order = json::array();
  for (int u : phys.effective_decode_order()) order.push_back(u + 1);
  root["decode_order"] = order;
  return root.dump(2);
}

std::string fmt_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string boundary_points_to_csv(const std::vector<BoundaryPoint>& points,
                                   const CanonicalScenario& scenario,
                                   const std::string& provenance) {
  std::ostringstream out;
  const int k = scenario.num_users();
  out << "# rate-region boundary points; rates in b/s/Hz, powers in canonical SNR units\n";
  out << "# " << provenance << "\n";
  out << "# pu_snr=" << fmt_double(scenario.pu_snr)
      << " pu_rate_target=" << fmt_double(scenario.pu_rate_target)
      << " beta=" << fmt_double(scenario.beta()) << " gains=";
  for (int i = 0; i < k; ++i) out << (i ? "," : "") << fmt_double(scenario.gains[i]);
  out << " budgets=";
  for (int i = 0; i < k; ++i) out << (i ? "," : "") << fmt_double(scenario.budgets[i]);
  out << "\n";
  for (int i = 1; i <= k; ++i) out << "alpha_" << i << ",";
  out << "r,";
  for (int i = 1; i <= k; ++i) out << "R_" << i << ",";
  out << "c,";
  for (int i = 1; i <= k; ++i) out << "p_" << i << ",";
  for (int i = 1; i <= k; ++i) out << "c_" << i << ",";
  out << "igs_required\n";
  for (const BoundaryPoint& pt : points) {
    for (int i = 0; i < k; ++i) out << fmt_double(pt.alpha[i]) << ",";
    out << fmt_double(pt.r) << ",";
    for (int i = 0; i < k; ++i) out << fmt_double(pt.rates[i]) << ",";
    out << fmt_double(pt.aggregate_c) << ",";
    for (int i = 0; i < k; ++i) out << fmt_double(pt.params[i].power) << ",";
    for (int i = 0; i < k; ++i) out << fmt_double(pt.params[i].circularity) << ",";
    out << (pt.igs_required ? 1 : 0) << "\n";
  }
  return out.str();
}

namespace {

json point_json(const BoundaryPoint& pt) {
  json j;
  j["r"] = pt.r;
  j["aggregate_c"] = pt.aggregate_c;
  j["alpha"] = pt.alpha;
  j["rates"] = pt.rates;
  json params = json::array();
  for (const auto& sp : pt.params) {
    params.push_back({{"power", sp.power},
                      {"circularity", sp.circularity},
                      {"phase", sp.phase}});
  }
  j["params"] = params;
  j["igs_required"] = pt.igs_required;
  j["pu_rate_achieved"] = pt.pu_rate_achieved;
  json sat = json::array();
  for (int u : pt.saturated_proper) sat.push_back(u + 1);
  j["saturated_proper"] = sat;
  json fixed = json::array();
  for (const auto& f : pt.fixed) {
    const char* bind = f.bind == FixedUser::Bind::power          ? "power"
                       : f.bind == FixedUser::Bind::circularity ? "circularity"
                                                                : "rate_cap";
    fixed.push_back({{"user", f.user + 1},
                     {"power", f.params.power},
                     {"circularity", f.params.circularity},
                     {"bind", bind}});
  }
  j["fixed_users"] = fixed;
  j["equivalent_noise"] = {{"total_variance", pt.equivalent_noise.total_variance},
                           {"complementary", pt.equivalent_noise.complementary}};
  return j;
}

}  // namespace

std::string boundary_point_to_json(const BoundaryPoint& point,
                                   const CanonicalScenario& scenario) {
  json j = point_json(point);
  j["scenario"] = {{"pu_snr", scenario.pu_snr},
                   {"gains", scenario.gains},
                   {"budgets", scenario.budgets},
                   {"pu_rate_target", scenario.pu_rate_target},
                   {"beta", scenario.beta()}};
  return j.dump(2);
}

std::string canonical_to_json(const CanonicalizationResult& canon) {
  json j;
  j["pu_snr"] = canon.scenario.pu_snr;
  j["pu_rate_target"] = canon.scenario.pu_rate_target;
  j["beta"] = canon.scenario.beta();
  j["gains"] = canon.scenario.gains;
  j["budgets"] = canon.scenario.budgets;
  j["per_user_noise"] = canon.per_user_noise;
  json order = json::array();
  for (int u : canon.decode_order) order.push_back(u + 1);
  j["decode_order"] = order;
  json rdiag = json::array();
  for (int i = 0; i < canon.zf_r.rows(); ++i) rdiag.push_back(canon.zf_r(i, i).real());
  j["zf_r_diagonal"] = rdiag;
  const Eigen::MatrixXcd gram = canon.zf_q.adjoint() * canon.zf_q;
  j["zf_q_orthonormality_error"] =
      (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm();
  return j.dump(2);
}

std::string canonical_to_table(const CanonicalizationResult& canon) {
  std::ostringstream out;
  const CanonicalScenario& sc = canon.scenario;
  out << "canonical model (unit direct gains, unit noise)\n";
  out << "  pu_snr p        = " << fmt_double(sc.pu_snr) << "\n";
  out << "  pu_rate_target  = " << fmt_double(sc.pu_rate_target) << " b/s/Hz\n";
  out << "  beta            = " << fmt_double(sc.beta()) << "\n";
  out << "  decode order    =";
  for (int u : canon.decode_order) out << " " << (u + 1);
  out << "  (first decoded first)\n";
  for (int k = 0; k < sc.num_users(); ++k) {
    out << "  user " << (k + 1) << ": a=" << fmt_double(sc.gains[k])
        << "  P=" << fmt_double(sc.budgets[k])
        << "  sigma_k^2=" << fmt_double(canon.per_user_noise[k]) << "\n";
  }
  return out.str();
}

std::string experiment_to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  const bool users = result.name == "sumrate_vs_users";
  out << "# " << result.name << "; rates in b/s/Hz\n";
  out << "# seed=" << result.config.seed << " trials=" << result.config.trials
      << " pu_rate_fraction=" << fmt_double(result.config.pu_rate_fraction);
  if (users) {
    out << " users=" << result.config.min_users << ".." << result.config.max_users
        << " su_budget=" << fmt_double(result.config.su_budget);
  } else {
    out << " K=" << result.config.num_users << " N=" << result.config.num_antennas
        << " alpha=";
    for (size_t i = 0; i < result.config.alpha.size(); ++i) {
      out << (i ? "," : "") << fmt_double(result.config.alpha[i]);
    }
  }
  out << "\n";
  out << (users ? "num_users" : "su_budget")
      << ",igs_mean,igs_se,pgs_mean,pgs_se,igs_per_user,pgs_per_user,trials,infeasible\n";
  for (const CurveRow& row : result.rows) {
    out << fmt_double(row.x) << "," << fmt_double(row.igs_mean) << ","
        << fmt_double(row.igs_se) << "," << fmt_double(row.pgs_mean) << ","
        << fmt_double(row.pgs_se) << "," << fmt_double(row.igs_per_user) << ","
        << fmt_double(row.pgs_per_user) << "," << row.trials << "," << row.infeasible
        << "\n";
  }
  return out.str();
}

std::string experiment_manifest_json(const ExperimentResult& result) {
  json j;
  j["name"] = result.name;
  j["seed"] = result.config.seed;
  j["version"] = IGSMAC_VERSION;
  j["git_describe"] = IGSMAC_GIT_DESCRIBE;
  j["config"] = {{"num_users", result.config.num_users},
                 {"num_antennas", result.config.num_antennas},
                 {"trials", result.config.trials},
                 {"pu_rate_fraction", result.config.pu_rate_fraction},
                 {"alpha", result.config.alpha},
                 {"budget_grid", result.config.effective_budget_grid()},
                 {"min_users", result.config.min_users},
                 {"max_users", result.config.max_users},
                 {"su_budget", result.config.su_budget},
                 {"threads", result.config.threads},
                 {"tol", result.config.tol}};
  return j.dump(2);
}

}  // namespace igsmac
