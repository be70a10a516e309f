#pragma once

#include <string>
#include <variant>
#include <vector>

#include "questlab/worldgen.hpp"

namespace questlab {

enum class Verb { Go, Look, Inventory, Take, Drop, Open, Examine, Insert, Unlock };

struct Action {
  Verb verb = Verb::Look;
  Direction dir = Direction::North;  // Go only
  int obj_a = -1;                    // world object index, -1 if unused
  int obj_b = -1;
  std::string surface;               // canonical command string

  int arity() const { return (obj_a >= 0) + (obj_b >= 0); }
  bool operator==(const Action& o) const { return surface == o.surface; }
};

struct ParseError {
  enum class Kind { UnknownVerb, UnknownObject, ArityMismatch };
  Kind kind;
  std::string message;
};

using ParseResult = std::variant<Action, ParseError>;

struct Observation {
  std::string text;
  std::vector<std::string> tokens;
};

/// Where an object currently is. Exactly one of the cases holds.
struct ObjectPlace {
  enum class Kind { Room, Inventory, Inside };
  Kind kind = Kind::Room;
  int id = -1;  // room index or container index, unused for Inventory
  bool operator==(const ObjectPlace&) const = default;
};

enum class ContainerState { None, Locked, Closed, Open };

struct GameState {
  int agent_room = 0;
  int quest_stage = 0;
  int steps_taken = 0;
  std::vector<ObjectPlace> object_places;      // indexed by object
  std::vector<ContainerState> container_states;  // indexed by object

  bool holding(int obj) const {
    return object_places[obj].kind == ObjectPlace::Kind::Inventory;
  }
  std::vector<int> inventory() const;  // ascending object indices
  bool operator==(const GameState&) const = default;
};

struct StepResult {
  GameState state;
  Observation obs;
  int reward = 0;
  bool done = false;
};

std::pair<GameState, Observation> reset(const World& world);

ParseResult parse_command(const World& world, const std::string& text);

/// Deterministic transition. Failed-but-parseable actions leave everything
/// but steps_taken unchanged and return the fixed failure text.
StepResult step(const World& world, const GameState& state, const Action& action);

/// +1 when the quest stage advanced, -1 when the minimum number of remaining
/// actions grew, 0 otherwise. `next` must be one step after `prev`.
int reward(const World& world, const GameState& prev, const GameState& next);

/// Minimum number of actions needed to finish the quest from `state`.
/// Exact for generator-shaped quests; validated against full-state search.
int min_remaining_actions(const World& world, const GameState& state);

bool quest_done(const World& world, const GameState& state);

/// True iff the action would succeed in `state` (same predicate step() uses).
bool can_perform(const World& world, const GameState& state, const Action& action);

std::vector<Action> admissible_actions(const World& world, const GameState& state);

/// Every parser-accepted command exactly once, in fixed enumeration order:
/// movement + meta, then 1-arg verbs over objects, then both 2-arg verbs
/// over all object pairs. Its size is the branching factor.
std::vector<Action> full_action_set(const World& world);

/// The quest script as parsed actions; executing it from reset finishes the
/// game in the minimum possible number of steps.
std::vector<Action> oracle_walkthrough(const World& world);

/// Room description as seen when standing in `room` under `state`.
std::string describe_room(const World& world, const GameState& state, int room);

}  // namespace questlab
