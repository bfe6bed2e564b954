#pragma once

#include <string>
#include <vector>

#include "igsmac/boundary.hpp"
#include "igsmac/canonical.hpp"
#include "igsmac/experiments.hpp"

namespace igsmac {

/// Parses a scenario file (JSON, complex numbers as [re, im] pairs; see
/// schema/scenario.json).  Throws std::invalid_argument with a descriptive
/// message on parse or validation failure.
PhysicalScenario load_physical_scenario(const std::string& path);
PhysicalScenario parse_physical_scenario(const std::string& text);

/// Serializes a scenario back to the same JSON layout.
std::string physical_scenario_to_json(const PhysicalScenario& phys);

/// Fixed-format float for CSV output (repeatable across runs and thread
/// counts).
std::string fmt_double(double value);

/// CSV table of boundary points: one row per point, self-describing header
/// comments carrying the flag set that produced it.
std::string boundary_points_to_csv(const std::vector<BoundaryPoint>& points,
                                   const CanonicalScenario& scenario,
                                   const std::string& provenance);

std::string boundary_point_to_json(const BoundaryPoint& point,
                                   const CanonicalScenario& scenario);

std::string canonical_to_json(const CanonicalizationResult& canon);
std::string canonical_to_table(const CanonicalizationResult& canon);

std::string experiment_to_csv(const ExperimentResult& result);

/// Run manifest: seed, build version, and the full configuration echo.
std::string experiment_manifest_json(const ExperimentResult& result);

}  // namespace igsmac
