#include "rlss/planner/discrete_search.hpp"

#include "rlss/geometry/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace rlss {

namespace {

using IVec = Eigen::VectorXi;

struct StateKey {
  std::array<int32_t, 3> pos{0, 0, 0};
  std::array<int8_t, 3> dir{0, 0, 0};

  bool operator==(const StateKey&) const = default;
  auto operator<=>(const StateKey&) const = default;
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (int32_t p : k.pos) mix(static_cast<uint32_t>(p));
    for (int8_t d : k.dir) mix(static_cast<uint8_t>(d));
    return static_cast<size_t>(h);
  }
};

struct PosKey {
  std::array<int32_t, 3> pos{0, 0, 0};
  bool operator==(const PosKey&) const = default;
};

struct PosKeyHash {
  size_t operator()(const PosKey& k) const {
    StateKey s;
    s.pos = k.pos;
    return StateKeyHash{}(s);
  }
};

std::vector<IVec> allDirections(int d) {
  std::vector<IVec> dirs;
  IVec v = IVec::Zero(d);
  const int total = static_cast<int>(std::pow(3, d));
  for (int code = 0; code < total; ++code) {
    int c = code;
    bool zero = true;
    for (int k = 0; k < d; ++k) {
      v(k) = (c % 3) - 1;
      if (v(k) != 0) zero = false;
      c /= 3;
    }
    if (!zero) dirs.push_back(v);
  }
  std::sort(dirs.begin(), dirs.end(), [](const IVec& a, const IVec& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
  return dirs;
}

struct OpenEntry {
  double f = 0.0;
  double h = 0.0;
  int actions = 0;
  StateKey key;

  bool operator>(const OpenEntry& o) const {
    return std::tie(f, h, actions, key) > std::tie(o.f, o.h, o.actions, o.key);
  }
};

struct NodeInfo {
  double g = std::numeric_limits<double>::infinity();
  int actions = 0;
  StateKey parent;
  SearchAction via;
  bool has_parent = false;
};

}  // namespace

std::vector<SearchAction> bestEffortAstar(const Snapshot& snap, const TaskInputs& task,
                                          const RlssParams& params, const Vec& goal) {
  const int d = static_cast<int>(snap.position.size());
  const double sigma = params.step_size;
  const AlignedBox search_bounds = task.workspace.bounds.inflated(sigma);
  const std::vector<IVec> directions = allDirections(d);

  auto worldPos = [&](const StateKey& k) {
    Vec p = snap.position;
    for (int i = 0; i < d; ++i) p(i) += sigma * k.pos[i];
    return p;
  };
  auto heuristic = [&](const Vec& p) { return (p - goal).norm() / sigma; };
  auto moveFree = [&](const Vec& from, const Vec& to) {
    return regionFree(*snap.obstacles, task.workspace, snap.robot_shapes,
                      sweptHull(task.shape, from, to));
  };

  if ((snap.position - goal).norm() <= 1e-9) return {};

  std::unordered_map<StateKey, NodeInfo, StateKeyHash> info;
  std::unordered_set<StateKey, StateKeyHash> closed;
  std::unordered_map<PosKey, bool, PosKeyHash> reachgoal_cache;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;

  const StateKey start{};  // grid anchored at the current position, direction 0
  info[start] = NodeInfo{0.0, 0, start, {}, false};
  const double h0 = heuristic(snap.position);
  open.push({h0, h0, 0, start});

  bool goal_found = false;
  double goal_cost = std::numeric_limits<double>::infinity();
  StateKey goal_parent;
  bool goal_via_reachgoal = false;

  // Best-effort fallback: minimum heuristic among expanded states, then
  // minimum cost.
  StateKey best_key = start;
  double best_h = h0;
  double best_g = 0.0;

  int expansions = 0;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    auto it = info.find(top.key);
    if (it == info.end()) continue;
    if (closed.count(top.key)) continue;
    if (top.f > it->second.g + top.h + 1e-12) continue;  // stale queue entry

    // A recorded goal completion that is at least as cheap as the whole
    // frontier is optimal (the heuristic is admissible).
    if (goal_found && goal_cost <= top.f + 1e-12) break;

    closed.insert(top.key);
    const NodeInfo node = it->second;
    const Vec pos = worldPos(top.key);
    const double h = heuristic(pos);

    if (h < best_h - 1e-12 || (std::abs(h - best_h) <= 1e-12 && node.g < best_g)) {
      best_h = h;
      best_g = node.g;
      best_key = top.key;
    }

    if ((pos - goal).norm() <= 1e-9) {
      // Grid state sitting exactly on the goal: done, any direction counts.
      if (node.g < goal_cost) {
        goal_found = true;
        goal_cost = node.g;
        goal_parent = top.key;
        goal_via_reachgoal = false;
      }
      break;
    }

    if (++expansions > params.search_node_budget) break;

    // REACHGOAL (cached per position, direction independent).
    const PosKey pk{top.key.pos};
    auto rit = reachgoal_cache.find(pk);
    if (rit == reachgoal_cache.end()) {
      rit = reachgoal_cache.emplace(pk, moveFree(pos, goal)).first;
    }
    if (rit->second) {
      const double cost = node.g + 1.0 + (pos - goal).norm() / sigma;
      if (cost < goal_cost - 1e-12) {
        goal_found = true;
        goal_cost = cost;
        goal_parent = top.key;
        goal_via_reachgoal = true;
      }
    }

    auto relax = [&](const StateKey& next, double cost, const SearchAction& via) {
      NodeInfo& ni = info[next];
      const double g2 = node.g + cost;
      if (g2 < ni.g - 1e-12) {
        ni.g = g2;
        ni.actions = node.actions + 1;
        ni.parent = top.key;
        ni.via = via;
        ni.has_parent = true;
        const double hn = heuristic(worldPos(next));
        open.push({g2 + hn, hn, ni.actions, next});
      }
    };

    // ROTATE: always valid from a valid state, cost 1.
    for (const IVec& dir : directions) {
      bool same = true;
      for (int k = 0; k < d; ++k) {
        if (static_cast<int8_t>(dir(k)) != top.key.dir[k]) same = false;
      }
      if (same) continue;
      StateKey next = top.key;
      for (int k = 0; k < d; ++k) next.dir[k] = static_cast<int8_t>(dir(k));
      SearchAction act;
      act.type = SearchAction::Type::Rotate;
      act.direction = dir;
      relax(next, 1.0, act);
    }

    // FORWARD: one step along the current direction, cost |direction|.
    bool has_dir = false;
    for (int k = 0; k < d; ++k) {
      if (top.key.dir[k] != 0) has_dir = true;
    }
    if (has_dir) {
      StateKey next = top.key;
      Vec delta = Vec::Zero(d);
      for (int k = 0; k < d; ++k) {
        next.pos[k] += top.key.dir[k];
        delta(k) = static_cast<double>(top.key.dir[k]);
      }
      const Vec npos = pos + sigma * delta;
      bool inside = true;
      for (int k = 0; k < d; ++k) {
        if (npos(k) < search_bounds.min(k) || npos(k) > search_bounds.max(k)) inside = false;
      }
      if (inside && moveFree(pos, npos)) {
        SearchAction act;
        act.type = SearchAction::Type::Forward;
        relax(next, delta.norm(), act);
      }
    }
  }

  std::vector<SearchAction> actions;
  StateKey cur = goal_found ? goal_parent : best_key;
  while (true) {
    const NodeInfo& ni = info[cur];
    if (!ni.has_parent) break;
    actions.push_back(ni.via);
    cur = ni.parent;
  }
  std::reverse(actions.begin(), actions.end());
  if (goal_found && goal_via_reachgoal) {
    SearchAction act;
    act.type = SearchAction::Type::ReachGoal;
    actions.push_back(act);
  }
  return actions;
}

std::vector<Vec> extractSegments(const std::vector<SearchAction>& actions, const Vec& start,
                                 double sigma, const Vec& goal) {
  std::vector<Vec> endpoints = {start};
  Vec cur = start;
  bool run_open = false;      // inside a (ROTATE)(FORWARD)+ group
  bool run_has_move = false;  // at least one FORWARD since the ROTATE
  Vec dir;
  bool done = false;

  auto closeRun = [&]() {
    if (run_open) {
      if (!run_has_move) {
        throw std::logic_error("extractSegments: ROTATE not followed by FORWARD");
      }
      if ((cur - endpoints.back()).norm() > 1e-12) endpoints.push_back(cur);
      run_open = false;
      run_has_move = false;
    }
  };

  for (const SearchAction& a : actions) {
    if (done) throw std::logic_error("extractSegments: action after REACHGOAL");
    switch (a.type) {
      case SearchAction::Type::Rotate:
        closeRun();
        dir = a.direction.cast<double>();
        run_open = true;
        break;
      case SearchAction::Type::Forward:
        if (!run_open) throw std::logic_error("extractSegments: FORWARD without ROTATE");
        cur = cur + sigma * dir;
        run_has_move = true;
        break;
      case SearchAction::Type::ReachGoal:
        closeRun();
        if ((goal - endpoints.back()).norm() > 1e-12) endpoints.push_back(goal);
        cur = goal;
        done = true;
        break;
    }
  }
  closeRun();
  return endpoints;
}

void prependStart(std::vector<Vec>& endpoints) {
  if (endpoints.empty()) throw std::logic_error("prependStart: empty endpoint list");
  endpoints.insert(endpoints.begin(), endpoints.front());
}

std::vector<double> assignDurations(const std::vector<Vec>& endpoints, double goal_time,
                                    double now, double vmax, double safety_duration) {
  const int L = static_cast<int>(endpoints.size()) - 1;
  if (L < 1) return {safety_duration};
  double total_length = 0.0;
  std::vector<double> lengths(L);
  for (int i = 1; i <= L; ++i) {
    lengths[i - 1] = (endpoints[i] - endpoints[i - 1]).norm();
    total_length += lengths[i - 1];
  }
  if (total_length <= 0.0) return {safety_duration};
  std::vector<double> durations(L);
  durations[0] = safety_duration;
  const double feasible = std::max(goal_time - now, total_length / vmax);
  for (int i = 2; i <= L; ++i) {
    durations[i - 1] = feasible * lengths[i - 1] / total_length;
  }
  return durations;
}

}  // namespace rlss
