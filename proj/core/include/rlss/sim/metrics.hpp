#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlss::sim {

struct RobotMetrics {
  int id = 0;
  bool goal_reached = false;
  bool deadlocked = false;
  std::optional<double> nav_duration;  // first time within the goal tolerance
  bool collision_involved = false;
  double collision_duration = 0.0;  // summed over audit samples (seconds)
  int qp_failures = 0;
  int svm_infeasible = 0;
  int plan_iterations = 0;
};

struct StageTiming {
  double total_ms = 0.0;
  double max_ms = 0.0;
  long count = 0;

  void add(double ms);
  double meanMs() const { return count > 0 ? total_ms / count : 0.0; }
};

/// Wall-clock timing lives here, separate from SimMetrics, so the metrics
/// JSON stays byte-identical across reruns of the same (scenario, seed).
struct TimingStats {
  StageTiming goal_selection;
  StageTiming discrete_search;
  StageTiming optimization;
  StageTiming rescale;
  StageTiming iteration;
  double wall_seconds = 0.0;
};

struct SimMetrics {
  std::string scenario;
  std::string algorithm;
  uint64_t seed = 0;
  int iterations = 0;
  double sim_time = 0.0;
  std::string terminated_by;  // all_settled | sim_time_cap | wall_budget
  bool budget_exceeded = false;
  std::vector<RobotMetrics> robots;
  std::vector<uint64_t> snapshot_hashes;  // per-iteration world snapshot audit

  int numDeadlocked() const;
  int numCollisionRobots() const;
  int numGoalReached() const;
  int totalQpFailures() const;
  int totalSvmInfeasible() const;
  int totalPlanIterations() const;
  std::optional<double> avgNavDuration() const;
};

std::string metricsToJson(const SimMetrics& m);
std::string timingToJson(const TimingStats& t);

}  // namespace rlss::sim
