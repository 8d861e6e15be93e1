// Scene files: a JSON description of a polyhedral set plus a list of
// queries (support evaluations, absolute values, norms, momenta,
// reconstruction checks, the one-dimensional spectrum example and named
// randomized verification suites).  Execution produces a deterministic JSON
// or CSV report; wall times are recorded only on request so that identical
// scene + flags + seed give byte-identical reports.
#pragma once

#include "polytube/polyhedra.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polytube::scene {

struct SceneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::uint64_t seed = 0;
  double tol_geom = 1e-9;
  double tol_norm = 1e-3;
  bool timings = false;
};

struct Scene {
  Eigen::Index dim = 0;
  MatX<double> vertices;  // 0 columns when the set is given by halfspaces only
  MatX<double> rays;
  std::vector<Halfspace<double>> halfspaces;
  bool has_vertices = false;
  bool has_halfspaces = false;
  nlohmann::json queries = nlohmann::json::array();
};

bool operator==(const Scene& a, const Scene& b);

// Throws SceneError with a field diagnostic on malformed input.
Scene parse_scene(const nlohmann::json& j);
Scene parse_scene_text(const std::string& text);
nlohmann::json to_json(const Scene& s);

struct RunResult {
  nlohmann::json report;
  bool all_passed = true;
};

RunResult run_scene(const Scene& s, const RunOptions& opts);

std::string report_to_csv(const nlohmann::json& report);

// Support-function profile over a deterministic angular grid of directions
// (two endpoints in one dimension, `grid` directions in two, a grid x grid
// sphere sweep in three).  Dimensions above three are not supported.
std::string support_profile_csv(const Scene& s, int grid, double tol_geom);

}  // namespace polytube::scene
