#include "rlss/sim/forest.hpp"
#include "rlss/sim/scenario.hpp"
#include "rlss/sim/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace rlss;

namespace {

void writeFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct RunArgs {
  std::string scenario_path;
  std::string algo = "rlss";
  std::optional<uint64_t> seed;
  std::string out_dir;
  bool no_prepend = false;
  bool no_pref_dist = false;
  double budget = 600.0;
};

int writeRunOutputs(const sim::Scenario& scenario, const sim::SimResult& result,
                    const std::string& out_dir) {
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    writeFile(fs::path(out_dir) / "metrics.json", sim::metricsToJson(result.metrics));
    writeFile(fs::path(out_dir) / "timing.json", sim::timingToJson(result.timing));
    writeFile(fs::path(out_dir) / "trajectories.csv",
              sim::trajectoryCsv(result, scenario.dimension));
    writeFile(fs::path(out_dir) / "splines.json", sim::splinesToJson(result));
  }
  const auto& m = result.metrics;
  std::cout << "scenario: " << m.scenario << "\nalgorithm: " << m.algorithm
            << "\nseed: " << m.seed << "\niterations: " << m.iterations
            << "\nsim time: " << m.sim_time << " s\nterminated by: " << m.terminated_by
            << "\ngoal reached: " << m.numGoalReached() << "/" << m.robots.size()
            << "\ndeadlocked: " << m.numDeadlocked()
            << "\ncolliding robots: " << m.numCollisionRobots()
            << "\nqp failures: " << m.totalQpFailures() << "/" << m.totalPlanIterations()
            << "\n";
  if (const auto avg = m.avgNavDuration()) {
    std::cout << "avg nav duration: " << *avg << " s\n";
  }
  if (m.algorithm == "rlss") {
    return (m.numDeadlocked() == 0 && m.numCollisionRobots() == 0) ? 0 : 1;
  }
  return 0;
}

int runCommand(const RunArgs& args) {
  const sim::Scenario scenario = sim::loadScenario(args.scenario_path);
  const sim::Algo algo = args.algo == "ebvc" ? sim::Algo::Ebvc : sim::Algo::Rlss;
  sim::RunOptions options;
  options.seed_override = args.seed;
  options.no_prepend = args.no_prepend;
  options.no_pref_dist = args.no_pref_dist;
  options.wall_budget_seconds = args.budget;
  const sim::SimResult result = sim::runSimulation(scenario, algo, options);
  return writeRunOutputs(scenario, result, args.out_dir);
}

struct SweepArgs {
  std::string scenario_path;
  std::string param;
  std::vector<double> values;
  std::optional<uint64_t> seed;
  std::string out_dir;
  double budget = 600.0;
};

int sweepCommand(const SweepArgs& args) {
  sim::Scenario base = sim::loadScenario(args.scenario_path);
  nlohmann::json summary;
  summary["param"] = args.param;
  summary["runs"] = nlohmann::json::array();
  int exit_code = 0;
  for (double value : args.values) {
    sim::Scenario scenario = base;
    if (args.param == "step_size") {
      scenario.rlss.step_size = value;
    } else if (args.param == "bezier_degree") {
      scenario.rlss.bezier_degree = static_cast<int>(value);
    } else if (args.param == "obstacle_check") {
      scenario.rlss.obstacle_check = value;
    } else if (args.param == "robot_check") {
      scenario.rlss.robot_check = value;
    } else {
      std::cerr << "unknown sweep parameter '" << args.param
                << "' (expected step_size, bezier_degree, obstacle_check, robot_check)\n";
      return 2;
    }
    sim::RunOptions options;
    options.seed_override = args.seed;
    options.wall_budget_seconds = args.budget;
    options.collect_logs = false;
    const sim::SimResult result = sim::runSimulation(scenario, sim::Algo::Rlss, options);
    const auto& m = result.metrics;

    std::ostringstream label;
    label << args.param << "_" << value;
    if (!args.out_dir.empty()) {
      fs::create_directories(fs::path(args.out_dir) / label.str());
      writeFile(fs::path(args.out_dir) / label.str() / "metrics.json",
                sim::metricsToJson(m));
    }
    nlohmann::json jr;
    jr["value"] = value;
    jr["deadlocked"] = m.numDeadlocked();
    jr["colliding"] = m.numCollisionRobots();
    jr["goal_reached"] = m.numGoalReached();
    const auto avg = m.avgNavDuration();
    jr["avg_nav_duration"] = avg ? nlohmann::json(*avg) : nlohmann::json(nullptr);
    jr["qp_failures"] = m.totalQpFailures();
    summary["runs"].push_back(jr);
    std::cout << label.str() << ": deadlocks " << m.numDeadlocked() << ", collisions "
              << m.numCollisionRobots() << ", avg nav "
              << (avg ? std::to_string(*avg) : std::string("n/a")) << "\n";
    if (m.numDeadlocked() > 0 || m.numCollisionRobots() > 0) exit_code = 1;
  }
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    writeFile(fs::path(args.out_dir) / "sweep_summary.json", summary.dump(2) + "\n");
  }
  return exit_code;
}

struct ForestArgs {
  double radius = 15.0;
  double occupancy = 0.10;
  double tree_radius = 0.5;
  double resolution = 0.5;
  double height = 1.5;
  int dim = 2;
  uint64_t seed = 1;
  std::string out;
};

int genForestCommand(const ForestArgs& args) {
  sim::ForestSpec spec;
  spec.radius = args.radius;
  spec.occupancy = args.occupancy;
  spec.tree_radius = args.tree_radius;
  spec.resolution = args.resolution;
  spec.height = args.height;
  spec.dim = args.dim;
  const std::vector<AlignedBox> boxes = sim::generateForest(spec, args.seed);
  const std::string json = sim::environmentToJson(boxes, spec.resolution);
  if (args.out.empty()) {
    std::cout << json;
  } else {
    writeFile(args.out, json);
    std::cout << "wrote " << boxes.size() << " boxes to " << args.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized multi-robot trajectory planning simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", run_args.scenario_path, "Scenario JSON file")->required();
  run->add_option("--algo", run_args.algo, "Planner: rlss or ebvc")
      ->check(CLI::IsMember({"rlss", "ebvc"}));
  run->add_option("--seed", run_args.seed, "Seed override");
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_flag("--no-prepend", run_args.no_prepend,
                "Ablation: skip the zero-length first segment");
  run->add_flag("--no-pref-dist", run_args.no_pref_dist,
                "Ablation: drop the preferred-distance cost term");
  run->add_option("--budget", run_args.budget, "Wall-clock budget in seconds");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep over one scenario");
  sweep->add_option("--scenario", sweep_args.scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--param", sweep_args.param,
                    "Parameter: step_size, bezier_degree, obstacle_check, robot_check")
      ->required();
  sweep->add_option("--values", sweep_args.values, "Values to sweep")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seed", sweep_args.seed, "Seed override");
  sweep->add_option("--out", sweep_args.out_dir, "Output directory");
  sweep->add_option("--budget", sweep_args.budget, "Per-run wall-clock budget in seconds");

  ForestArgs forest_args;
  CLI::App* forest = app.add_subcommand("gen-forest", "Generate a random forest environment");
  forest->add_option("--radius", forest_args.radius, "Forest disk radius (m)");
  forest->add_option("--occupancy", forest_args.occupancy, "Occupied area fraction");
  forest->add_option("--tree-radius", forest_args.tree_radius, "Tree cylinder radius (m)");
  forest->add_option("--resolution", forest_args.resolution, "Voxel edge length (m)");
  forest->add_option("--height", forest_args.height, "Tree height for 3D forests (m)");
  forest->add_option("--dim", forest_args.dim, "Environment dimension (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  forest->add_option("--seed", forest_args.seed, "Seed");
  forest->add_option("--out", forest_args.out, "Output environment JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return runCommand(run_args);
    if (sweep->parsed()) return sweepCommand(sweep_args);
    if (forest->parsed()) return genForestCommand(forest_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
