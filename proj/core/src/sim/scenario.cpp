#include "rlss/sim/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rlss::sim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw std::invalid_argument("scenario" + (context.empty() ? "" : " " + context) + ": " +
                              message);
}

void rejectUnknownKeys(const json& obj, const std::set<std::string>& allowed,
                       const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail(context, "unknown key '" + it.key() + "'");
    }
  }
}

Vec parseVec(const json& arr, int expected_dim, const std::string& context) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected_dim) {
    fail(context, "expected an array of " + std::to_string(expected_dim) + " numbers");
  }
  Vec v(expected_dim);
  for (int i = 0; i < expected_dim; ++i) v(i) = arr[i].get<double>();
  return v;
}

AlignedBox parseBox(const json& obj, int dim, const std::string& context) {
  rejectUnknownKeys(obj, {"min", "max"}, context);
  return AlignedBox(parseVec(obj.at("min"), dim, context), parseVec(obj.at("max"), dim, context));
}

std::vector<double> parseDoubleList(const json& arr, const std::string& context) {
  if (!arr.is_array() || arr.empty()) fail(context, "expected a nonempty array");
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(v.get<double>());
  return out;
}

RobotSpec parseRobot(const json& obj, int dim, const std::string& context) {
  rejectUnknownKeys(obj,
                    {"shape_half_extents", "shape_vertices", "start", "goal",
                     "max_derivatives", "continuity"},
                    context);
  RobotSpec spec;
  if (obj.contains("shape_half_extents") == obj.contains("shape_vertices")) {
    fail(context, "exactly one of shape_half_extents / shape_vertices is required");
  }
  if (obj.contains("shape_half_extents")) {
    spec.base = ConvexShape::box(parseVec(obj.at("shape_half_extents"), dim, context));
  } else {
    std::vector<Vec> verts;
    for (const auto& v : obj.at("shape_vertices")) {
      verts.push_back(parseVec(v, dim, context + ".shape_vertices"));
    }
    spec.base = ConvexShape(std::move(verts));
  }
  spec.start = parseVec(obj.at("start"), dim, context);
  spec.goal = parseVec(obj.at("goal"), dim, context);
  spec.derivative_limits = parseDoubleList(obj.at("max_derivatives"), context);
  spec.continuity = obj.value("continuity", 1);
  if (spec.continuity < 0) fail(context, "continuity must be >= 0");
  return spec;
}

EnvironmentSpec parseEnvironment(const json& obj, int dim, const std::string& context) {
  EnvironmentSpec env;
  if (obj.is_null()) return env;
  if (obj.is_string()) {
    env.kind = EnvironmentSpec::Kind::File;
    env.file = obj.get<std::string>();
    return env;
  }
  if (obj.contains("forest")) {
    rejectUnknownKeys(obj, {"forest"}, context);
    const json& f = obj.at("forest");
    rejectUnknownKeys(f, {"radius", "occupancy", "tree_radius", "resolution", "height"},
                      context + ".forest");
    env.kind = EnvironmentSpec::Kind::Forest;
    env.forest.radius = f.value("radius", 7.5);
    env.forest.occupancy = f.value("occupancy", 0.10);
    env.forest.tree_radius = f.value("tree_radius", 0.5);
    env.forest.resolution = f.value("resolution", 0.5);
    env.forest.height = f.value("height", 1.5);
    env.forest.dim = dim;
    env.resolution = env.forest.resolution;
    return env;
  }
  rejectUnknownKeys(obj, {"resolution", "boxes"}, context);
  env.kind = EnvironmentSpec::Kind::Inline;
  env.resolution = obj.value("resolution", 0.5);
  if (obj.contains("boxes")) {
    for (const auto& b : obj.at("boxes")) {
      env.boxes.push_back(parseBox(b, dim, context + ".boxes"));
    }
  }
  if (env.boxes.empty()) env.kind = EnvironmentSpec::Kind::Empty;
  return env;
}

RlssParams parseRlss(const json& obj, const std::string& context) {
  rejectUnknownKeys(obj,
                    {"horizon", "safety_distance", "step_size", "safety_duration",
                     "bezier_degree", "obstacle_check", "robot_check", "preferred_distance",
                     "pref_weight", "endpoint_weights", "derivative_weights", "rescale_factor",
                     "goal_search_step", "search_node_budget"},
                    context);
  RlssParams p;
  p.horizon = obj.value("horizon", p.horizon);
  p.safety_distance = obj.value("safety_distance", p.safety_distance);
  p.step_size = obj.value("step_size", p.step_size);
  p.safety_duration = obj.value("safety_duration", p.safety_duration);
  p.bezier_degree = obj.value("bezier_degree", p.bezier_degree);
  p.obstacle_check = obj.value("obstacle_check", p.obstacle_check);
  p.robot_check = obj.value("robot_check", p.robot_check);
  p.preferred_distance = obj.value("preferred_distance", p.preferred_distance);
  p.pref_weight = obj.value("pref_weight", p.pref_weight);
  if (obj.contains("endpoint_weights")) {
    p.endpoint_weights = parseDoubleList(obj.at("endpoint_weights"), context);
  }
  if (obj.contains("derivative_weights")) {
    p.derivative_weights = parseDoubleList(obj.at("derivative_weights"), context);
  }
  p.rescale_factor = obj.value("rescale_factor", p.rescale_factor);
  p.goal_search_step = obj.value("goal_search_step", p.goal_search_step);
  p.search_node_budget = obj.value("search_node_budget", p.search_node_budget);
  return p;
}

ebvc::EbvcParams parseEbvc(const json& obj, const std::string& context) {
  rejectUnknownKeys(obj, {"horizon_steps", "goal_weights", "input_weights", "check_distance"},
                    context);
  ebvc::EbvcParams p;
  p.horizon_steps = obj.value("horizon_steps", p.horizon_steps);
  if (obj.contains("goal_weights")) {
    p.goal_weights = parseDoubleList(obj.at("goal_weights"), context);
  }
  if (obj.contains("input_weights")) {
    p.input_weights = parseDoubleList(obj.at("input_weights"), context);
  }
  p.check_distance = obj.value("check_distance", p.check_distance);
  return p;
}

}  // namespace

Scenario parseScenario(const std::string& json_text, const std::string& origin_hint) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin_hint, std::string("JSON parse error: ") + e.what());
  }
  rejectUnknownKeys(doc,
                    {"name", "dimension", "workspace", "robots", "environment", "prior_map",
                     "start_jitter", "replan_period", "max_sim_time", "rlss", "ebvc", "seed"},
                    origin_hint);

  Scenario sc;
  sc.name = doc.value("name", origin_hint);
  sc.dimension = doc.at("dimension").get<int>();
  if (sc.dimension != 2 && sc.dimension != 3) fail(origin_hint, "dimension must be 2 or 3");
  sc.workspace_box = parseBox(doc.at("workspace"), sc.dimension, "workspace");
  if (!doc.contains("robots") || doc.at("robots").empty()) {
    fail(origin_hint, "at least one robot is required");
  }
  int idx = 0;
  for (const auto& r : doc.at("robots")) {
    sc.robots.push_back(parseRobot(r, sc.dimension, "robots[" + std::to_string(idx) + "]"));
    ++idx;
  }
  if (doc.contains("environment")) {
    sc.environment = parseEnvironment(doc.at("environment"), sc.dimension, "environment");
  }
  const std::string prior = doc.value("prior_map", "empty");
  if (prior == "empty") {
    sc.prior_map = PriorMap::Empty;
  } else if (prior == "full") {
    sc.prior_map = PriorMap::Full;
  } else {
    fail(origin_hint, "prior_map must be 'empty' or 'full'");
  }
  sc.start_jitter = doc.value("start_jitter", 0.0);
  sc.replan_period = doc.value("replan_period", 0.1);
  sc.max_sim_time = doc.value("max_sim_time", 120.0);
  if (doc.contains("rlss")) sc.rlss = parseRlss(doc.at("rlss"), "rlss");
  sc.rlss.replan_period = sc.replan_period;
  if (doc.contains("ebvc")) sc.ebvc = parseEbvc(doc.at("ebvc"), "ebvc");
  sc.ebvc.dt = sc.replan_period;
  sc.seed = doc.value("seed", 1);
  return sc;
}

Scenario loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("loadScenario: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parseScenario(buf.str(), path);
}

std::pair<std::vector<AlignedBox>, double> loadEnvironmentFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("loadEnvironmentFile: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("loadEnvironmentFile: " + std::string(e.what()));
  }
  rejectUnknownKeys(doc, {"resolution", "boxes"}, path);
  const double resolution = doc.value("resolution", 0.5);
  std::vector<AlignedBox> boxes;
  if (doc.contains("boxes") && !doc.at("boxes").empty()) {
    const int dim = static_cast<int>(doc.at("boxes").front().at("min").size());
    for (const auto& b : doc.at("boxes")) {
      boxes.push_back(parseBox(b, dim, path));
    }
  }
  return {std::move(boxes), resolution};
}

std::string environmentToJson(const std::vector<AlignedBox>& boxes, double resolution) {
  json doc;
  doc["resolution"] = resolution;
  doc["boxes"] = json::array();
  for (const AlignedBox& b : boxes) {
    json jb;
    jb["min"] = std::vector<double>(b.min.data(), b.min.data() + b.min.size());
    jb["max"] = std::vector<double>(b.max.data(), b.max.data() + b.max.size());
    doc["boxes"].push_back(std::move(jb));
  }
  return doc.dump(2) + "\n";
}

}  // namespace rlss::sim
