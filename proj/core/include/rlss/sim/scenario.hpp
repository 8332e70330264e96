#pragma once

#include "rlss/ebvc/ebvc.hpp"
#include "rlss/planner/params.hpp"
#include "rlss/sim/forest.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlss::sim {

struct RobotSpec {
  ConvexShape base;  // collision shape at the origin
  Vec start;
  Vec goal;
  std::vector<double> derivative_limits;  // gamma^k, k = 1..K
  int continuity = 1;
};

/// Obstacle source: exactly one of the options is used.
struct EnvironmentSpec {
  enum class Kind { Empty, Inline, File, Forest };
  Kind kind = Kind::Empty;
  double resolution = 0.5;
  std::vector<AlignedBox> boxes;  // Inline
  std::string file;               // File (environment JSON)
  ForestSpec forest;              // Forest (seeded by the run seed)
};

enum class PriorMap { Empty, Full };

struct Scenario {
  std::string name;
  int dimension = 2;
  AlignedBox workspace_box;
  std::vector<RobotSpec> robots;
  EnvironmentSpec environment;
  PriorMap prior_map = PriorMap::Empty;
  double start_jitter = 0.0;  // per-seed random start displacement radius
  double replan_period = 0.1;
  double max_sim_time = 120.0;  // deterministic simulated-time cap
  RlssParams rlss;
  ebvc::EbvcParams ebvc;
  uint64_t seed = 1;
};

/// Parses a scenario JSON file. Unknown keys anywhere in the document are
/// rejected with std::invalid_argument.
Scenario loadScenario(const std::string& path);
Scenario parseScenario(const std::string& json_text, const std::string& origin_hint = "");

/// Environment file: {"resolution": meters, "boxes": [{"min": [...], "max": [...]}]}.
std::pair<std::vector<AlignedBox>, double> loadEnvironmentFile(const std::string& path);
std::string environmentToJson(const std::vector<AlignedBox>& boxes, double resolution);

}  // namespace rlss::sim
