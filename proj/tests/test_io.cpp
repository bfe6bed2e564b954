#include "igsmac/scenario_io.hpp"

#include <doctest.h>

#include "igsmac/experiments.hpp"
#include "igsmac/svg_plot.hpp"

using namespace igsmac;

TEST_CASE("scenario JSON round trip") {
  const PhysicalScenario original = demo_scenario(2, UserOrdering::swapped);
  const std::string text = physical_scenario_to_json(original);
  const PhysicalScenario parsed = parse_physical_scenario(text);
  CHECK(parsed.pu_direct == original.pu_direct);
  CHECK((parsed.su_direct - original.su_direct).norm() == 0.0);
  CHECK((parsed.pu_to_bs - original.pu_to_bs).norm() == 0.0);
  CHECK(parsed.su_budgets == original.su_budgets);
  CHECK(parsed.pu_rate_target == doctest::Approx(original.pu_rate_target).epsilon(1e-15));
  CHECK(parsed.effective_decode_order() == original.effective_decode_order());
  const CanonicalizationResult a = to_canonical(original);
  const CanonicalizationResult b = to_canonical(parsed);
  for (int k = 0; k < 2; ++k) {
    CHECK(a.scenario.gains[k] == doctest::Approx(b.scenario.gains[k]).epsilon(1e-14));
  }
}

TEST_CASE("scenario parse errors are descriptive") {
  CHECK_THROWS_WITH_AS(parse_physical_scenario("{not json"),
                       doctest::Contains("parse error"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_physical_scenario("[1,2]"),
                       doctest::Contains("top level"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_physical_scenario("{}"),
                       doctest::Contains("pu_direct"), std::invalid_argument);

  // wrong value types surface as input errors, not library aborts
  std::string typebad = physical_scenario_to_json(demo_scenario(1));
  const auto tpos = typebad.find("\"pu_power\": 100.0");
  REQUIRE(tpos != std::string::npos);
  typebad.replace(tpos, 17, "\"pu_power\": \"x\"");
  CHECK_THROWS_AS(parse_physical_scenario(typebad), std::invalid_argument);

  // both a target and a fraction
  std::string both = physical_scenario_to_json(demo_scenario(1));
  both.insert(both.rfind('}'), ", \"pu_rate_fraction\": 0.8");
  CHECK_THROWS_WITH_AS(parse_physical_scenario(both),
                       doctest::Contains("exactly one"), std::invalid_argument);
}

TEST_CASE("fraction-specified targets") {
  std::string text = physical_scenario_to_json(demo_scenario(1));
  // swap the explicit target for a fraction
  const auto pos = text.find("\"pu_rate_target\"");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find(',', pos);
  text.replace(pos, end - pos, "\"pu_rate_fraction\": 0.8");
  const PhysicalScenario parsed = parse_physical_scenario(text);
  CHECK(parsed.pu_rate_target ==
        doctest::Approx(demo_scenario(1).pu_rate_target).epsilon(1e-12));
}

TEST_CASE("boundary CSV shape") {
  const CanonicalScenario sc = to_canonical(demo_scenario(1)).scenario;
  const auto points = sweep_region(sc, 5, SignalingMode::igs);
  const std::string csv = boundary_points_to_csv(points, sc, "mode=igs sweep=5");
  int header_lines = 0;
  int data_lines = 0;
  size_t pos = 0;
  while (pos < csv.size()) {
    const size_t next = csv.find('\n', pos);
    const std::string line = csv.substr(pos, next - pos);
    if (!line.empty() && line[0] == '#') {
      ++header_lines;
    } else if (!line.empty()) {
      ++data_lines;
    }
    pos = next == std::string::npos ? csv.size() : next + 1;
  }
  CHECK(header_lines == 3);
  CHECK(data_lines == 1 + 5);  // column header + one row per point
  CHECK(csv.find("alpha_1,alpha_2,r,R_1,R_2,c,p_1,p_2,c_1,c_2,igs_required") !=
        std::string::npos);
  CHECK(csv.find("mode=igs sweep=5") != std::string::npos);
}

TEST_CASE("svg rendering") {
  SvgSeries series;
  series.label = "demo";
  series.points = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}};
  const std::string svg = render_svg_plot("title", "x", "y", {series, series});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  size_t polylines = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 2);
}

TEST_CASE("experiment manifest carries the configuration") {
  ExperimentConfig config;
  config.trials = 2;
  config.seed = 77;
  config.budget_grid = {1.0, 10.0};
  config.threads = 1;
  const ExperimentResult result = sumrate_vs_budget(config);
  const std::string manifest = experiment_manifest_json(result);
  CHECK(manifest.find("\"seed\": 77") != std::string::npos);
  CHECK(manifest.find("\"git_describe\"") != std::string::npos);
  CHECK(manifest.find("\"version\"") != std::string::npos);
  CHECK(manifest.find("\"trials\": 2") != std::string::npos);
}

TEST_CASE("fmt_double is stable") {
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(1.0 / 3.0) == "0.333333333333");
  CHECK(fmt_double(12345.0) == "12345");
}
