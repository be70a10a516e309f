#pragma once

// Test-side oracles and fixtures. Everything here treats the engine as a
// black box; nothing reuses the planner under test.

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "questlab/engine.hpp"
#include "questlab/worldgen.hpp"

namespace questlab::testing {

/// Identity of a game state for search purposes (steps_taken excluded).
inline std::string state_key(const GameState& s) {
  std::string k = std::to_string(s.agent_room) + "|" + std::to_string(s.quest_stage) + "|";
  for (const auto& p : s.object_places) {
    k += std::to_string(static_cast<int>(p.kind)) + ":" + std::to_string(p.id) + ",";
  }
  k += "|";
  for (auto c : s.container_states) k += std::to_string(static_cast<int>(c));
  return k;
}

/// Exhaustive reachable-state enumeration plus exact distance-to-completion
/// for every state, computed by backward breadth-first search over the full
/// transition graph. Only feasible on small worlds.
class StateSpaceOracle {
 public:
  explicit StateSpaceOracle(const World& world) : world_(world) {
    actions_ = full_action_set(world);
    auto [start, obs] = reset(world);
    enumerate(start);
    solve();
  }

  int distance(const GameState& s) const {
    auto it = index_.find(state_key(s));
    if (it == index_.end()) return -1;
    return dist_[it->second];
  }

  std::size_t num_states() const { return states_.size(); }

 private:
  void enumerate(const GameState& start) {
    add_state(start);
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop_front();
      if (quest_done(world_, states_[cur])) continue;  // absorbing
      for (const Action& a : actions_) {
        if (!can_perform(world_, states_[cur], a)) continue;
        StepResult r = step(world_, states_[cur], a);
        auto [id, inserted] = add_state(r.state);
        incoming_[id].push_back(cur);
        if (inserted) frontier.push_back(id);
      }
    }
  }

  std::pair<int, bool> add_state(const GameState& s) {
    std::string key = state_key(s);
    auto it = index_.find(key);
    if (it != index_.end()) return {it->second, false};
    int id = static_cast<int>(states_.size());
    index_[key] = id;
    GameState canon = s;
    canon.steps_taken = 0;
    states_.push_back(canon);
    incoming_.push_back({});
    return {id, true};
  }

  void solve() {
    dist_.assign(states_.size(), -1);
    std::deque<int> frontier;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (quest_done(world_, states_[i])) {
        dist_[i] = 0;
        frontier.push_back(static_cast<int>(i));
      }
    }
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop_front();
      for (int prev : incoming_[cur]) {
        if (dist_[prev] < 0) {
          dist_[prev] = dist_[cur] + 1;
          frontier.push_back(prev);
        }
      }
    }
  }

  const World& world_;
  std::vector<Action> actions_;
  std::vector<GameState> states_;
  std::vector<std::vector<int>> incoming_;
  std::map<std::string, int> index_;
  std::vector<int> dist_;
};

/// Forward breadth-first search for the minimum number of actions from reset
/// to quest completion. Stops at the first completed state.
inline int bfs_shortest_completion(const World& world, int depth_cap = 64) {
  auto actions = full_action_set(world);
  auto [start, obs] = reset(world);
  std::map<std::string, int> seen{{state_key(start), 0}};
  std::deque<GameState> frontier{start};
  while (!frontier.empty()) {
    GameState cur = frontier.front();
    frontier.pop_front();
    int d = seen[state_key(cur)];
    if (quest_done(world, cur)) return d;
    if (d >= depth_cap) continue;
    for (const Action& a : actions) {
      if (!can_perform(world, cur, a)) continue;
      StepResult r = step(world, cur, a);
      std::string key = state_key(r.state);
      if (!seen.count(key)) {
        seen[key] = d + 1;
        frontier.push_back(r.state);
      }
    }
  }
  return -1;
}

/// Two rooms (start "basement", "chamber" to the north), one key on the
/// chamber floor, quest = go north then take it. Mirrors the worked examples.
inline World two_room_key_world() {
  World w;
  w.config = WorldConfig::custom(0, 2, 1, 2);
  w.rooms = {{"basement", 0, 0}, {"chamber", 0, 1}};
  w.connections = {{0, Direction::North, 1}};
  ObjectSpec key;
  key.name = "cubical key";
  key.kind = ObjectKind::Portable;
  key.room = 1;
  w.objects = {key};
  QuestStep go;
  go.kind = QuestKind::Go;
  go.dir = Direction::North;
  go.room = 0;
  go.action = "go north";
  QuestStep take;
  take.kind = QuestKind::Take;
  take.room = 1;
  take.object_a = 0;
  take.action = "take cubical key";
  w.quest = {go, take};
  w.vocabulary = {"basement", "chamber", "cubical", "key"};
  w.finalize();
  return w;
}

}  // namespace questlab::testing
