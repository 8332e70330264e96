#include "rlss/sim/metrics.hpp"

#include <json.hpp>

#include <algorithm>

namespace rlss::sim {

using nlohmann::json;

void StageTiming::add(double ms) {
  total_ms += ms;
  max_ms = std::max(max_ms, ms);
  ++count;
}

int SimMetrics::numDeadlocked() const {
  int n = 0;
  for (const auto& r : robots) n += r.deadlocked ? 1 : 0;
  return n;
}

int SimMetrics::numCollisionRobots() const {
  int n = 0;
  for (const auto& r : robots) n += r.collision_involved ? 1 : 0;
  return n;
}

int SimMetrics::numGoalReached() const {
  int n = 0;
  for (const auto& r : robots) n += r.goal_reached ? 1 : 0;
  return n;
}

int SimMetrics::totalQpFailures() const {
  int n = 0;
  for (const auto& r : robots) n += r.qp_failures;
  return n;
}

int SimMetrics::totalSvmInfeasible() const {
  int n = 0;
  for (const auto& r : robots) n += r.svm_infeasible;
  return n;
}

int SimMetrics::totalPlanIterations() const {
  int n = 0;
  for (const auto& r : robots) n += r.plan_iterations;
  return n;
}

std::optional<double> SimMetrics::avgNavDuration() const {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : robots) {
    if (r.nav_duration) {
      sum += *r.nav_duration;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::string metricsToJson(const SimMetrics& m) {
  json doc;
  doc["scenario"] = m.scenario;
  doc["algorithm"] = m.algorithm;
  doc["seed"] = m.seed;
  doc["iterations"] = m.iterations;
  doc["sim_time"] = m.sim_time;
  doc["terminated_by"] = m.terminated_by;
  doc["budget_exceeded"] = m.budget_exceeded;
  doc["num_deadlocked"] = m.numDeadlocked();
  doc["num_collision_robots"] = m.numCollisionRobots();
  doc["num_goal_reached"] = m.numGoalReached();
  doc["total_qp_failures"] = m.totalQpFailures();
  doc["total_svm_infeasible"] = m.totalSvmInfeasible();
  doc["total_plan_iterations"] = m.totalPlanIterations();
  const auto avg = m.avgNavDuration();
  doc["avg_nav_duration"] = avg ? json(*avg) : json(nullptr);
  doc["robots"] = json::array();
  for (const auto& r : m.robots) {
    json jr;
    jr["id"] = r.id;
    jr["goal_reached"] = r.goal_reached;
    jr["deadlocked"] = r.deadlocked;
    jr["nav_duration"] = r.nav_duration ? json(*r.nav_duration) : json(nullptr);
    jr["collision_involved"] = r.collision_involved;
    jr["collision_duration"] = r.collision_duration;
    jr["qp_failures"] = r.qp_failures;
    jr["svm_infeasible"] = r.svm_infeasible;
    jr["plan_iterations"] = r.plan_iterations;
    doc["robots"].push_back(std::move(jr));
  }
  doc["snapshot_hashes"] = m.snapshot_hashes;
  return doc.dump(2) + "\n";
}

std::string timingToJson(const TimingStats& t) {
  json doc;
  auto stage = [](const StageTiming& s) {
    json js;
    js["mean_ms"] = s.meanMs();
    js["max_ms"] = s.max_ms;
    js["total_ms"] = s.total_ms;
    js["count"] = s.count;
    return js;
  };
  doc["goal_selection"] = stage(t.goal_selection);
  doc["discrete_search"] = stage(t.discrete_search);
  doc["optimization"] = stage(t.optimization);
  doc["rescale"] = stage(t.rescale);
  doc["iteration"] = stage(t.iteration);
  doc["wall_seconds"] = t.wall_seconds;
  return doc.dump(2) + "\n";
}

}  // namespace rlss::sim
