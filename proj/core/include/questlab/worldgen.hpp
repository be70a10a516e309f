#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace questlab {

enum class Direction : int { North = 0, South = 1, East = 2, West = 3 };

Direction opposite(Direction d);
const std::string& direction_name(Direction d);
std::optional<Direction> direction_from_name(const std::string& name);

enum class Preset { Small, Large };

struct WorldConfig {
  std::uint64_t seed = 0;
  int num_rooms = 0;
  int num_objects = 0;
  int quest_length = 0;

  static WorldConfig preset(Preset p, std::uint64_t seed);
  static WorldConfig custom(std::uint64_t seed, int rooms, int objects, int quest_length);

  bool operator==(const WorldConfig&) const = default;
};

struct RoomSpec {
  std::string name;   // unique per world; doubles as the node label
  int x = 0, y = 0;   // lattice cell, keeps directions globally consistent
  bool operator==(const RoomSpec&) const = default;
};

/// One record per connected pair: going `dir` from room_a leads to room_b.
/// The reverse edge is implied (and must hold on the lattice).
struct Connection {
  int room_a = -1;
  Direction dir = Direction::North;
  int room_b = -1;
  bool operator==(const Connection&) const = default;
};

enum class ObjectKind { Portable, Container, Scenery };

struct ObjectSpec {
  std::string name;            // "brass key" — unique per world
  ObjectKind kind = ObjectKind::Portable;
  int room = -1;               // initial floor room, or -1 if inside a container
  int container = -1;          // index of container initially holding it, or -1
  // container-only fields
  int key = -1;                // object index of the matching key, -1 = no lock
  bool starts_locked = false;
  bool starts_open = false;
  bool operator==(const ObjectSpec&) const = default;
};

enum class QuestKind { Go, Take, Unlock, Insert };

struct QuestStep {
  QuestKind kind = QuestKind::Go;
  std::string action;   // canonical command, e.g. "unlock oak chest with brass key"
  int room = -1;        // room the action must be performed in
  int object_a = -1;    // take: item; unlock: container; insert: item
  int object_b = -1;    // unlock: key; insert: container
  Direction dir = Direction::North;  // Go steps only
  bool operator==(const QuestStep&) const = default;
};

struct World {
  WorldConfig config;
  std::vector<RoomSpec> rooms;        // room 0 is the start room
  std::vector<Connection> connections;
  std::vector<ObjectSpec> objects;
  std::vector<QuestStep> quest;
  std::vector<std::string> vocabulary;  // sorted; every token that can appear

  // ---- derived, rebuilt by finalize(); not serialized ----
  std::vector<std::array<int, 4>> exits;      // room -> neighbor per Direction, -1 = none
  std::vector<std::vector<int>> room_dist;    // all-pairs shortest path (moves)
  std::vector<int> take_step;                 // object -> quest step that takes it, -1
  std::vector<int> needs_held;                // step -> object that must be held, -1
  std::vector<int> quest_suffix_room;         // step -> room of that step (alias)

  int start_room() const { return 0; }
  int room_index(const std::string& name) const;
  int object_index(const std::string& name) const;   // -1 if absent
  int distance(int a, int b) const { return room_dist[a][b]; }

  /// Rebuilds derived indices. Must be called after construction or edits;
  /// generate_world and JSON loading do it for you.
  void finalize();

  bool operator==(const World& o) const;
};

struct WorldStats {
  int branching_factor = 0;
  int vocab_size = 0;
  double avg_words_per_obs = 0.0;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministically generates a world: connected room lattice, objects with
/// a lock-chain quest, decoys, full vocabulary. Pure function of config.
/// Throws GenerationError("unsatisfiable config") after bounded retries.
World generate_world(const WorldConfig& config);

WorldStats world_stats(const World& world);

// JSON serialization (versioned schema, see docs/world-schema.md).
std::string world_to_json(const World& world);
World world_from_json(const std::string& json_text);
void save_world(const World& world, const std::string& path);
World load_world(const std::string& path);

}  // namespace questlab
