#include <doctest.h>

#include <algorithm>

#include "questlab/engine.hpp"
#include "questlab/text.hpp"
#include "questlab/worldgen.hpp"

using namespace questlab;

TEST_CASE("preset configs expand to the documented sizes") {
  auto s = WorldConfig::preset(Preset::Small, 7);
  CHECK(s.num_rooms == 10);
  CHECK(s.num_objects == 20);
  CHECK(s.quest_length == 5);
  auto l = WorldConfig::preset(Preset::Large, 7);
  CHECK(l.num_rooms == 20);
  CHECK(l.num_objects == 40);
  CHECK(l.quest_length == 10);
}

TEST_CASE("small world has the configured counts and quest length") {
  World w = generate_world(WorldConfig::preset(Preset::Small, 7));
  CHECK(w.rooms.size() == 10);
  CHECK(w.objects.size() == 20);
  CHECK(w.quest.size() == 5);
}

TEST_CASE("large world has the configured counts and quest length") {
  World w = generate_world(WorldConfig::preset(Preset::Large, 7));
  CHECK(w.rooms.size() == 20);
  CHECK(w.objects.size() == 40);
  CHECK(w.quest.size() == 10);
}

TEST_CASE("identical configs generate structurally equal worlds") {
  auto cfg = WorldConfig::preset(Preset::Small, 42);
  World a = generate_world(cfg);
  World b = generate_world(cfg);
  CHECK(a == b);
  CHECK(world_to_json(a) == world_to_json(b));
}

TEST_CASE("world JSON round-trips") {
  World w = generate_world(WorldConfig::preset(Preset::Small, 3));
  World back = world_from_json(world_to_json(w));
  CHECK(w == back);
}

TEST_CASE("connection directions are mutually consistent") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    World w = generate_world(WorldConfig::preset(Preset::Small, seed));
    for (const auto& c : w.connections) {
      CHECK(w.exits[c.room_a][static_cast<int>(c.dir)] == c.room_b);
      CHECK(w.exits[c.room_b][static_cast<int>(opposite(c.dir))] == c.room_a);
    }
  }
}

TEST_CASE("room graph is connected") {
  for (std::uint64_t seed : {1, 9, 77}) {
    World w = generate_world(WorldConfig::preset(Preset::Large, seed));
    for (std::size_t i = 0; i < w.rooms.size(); ++i) {
      CHECK(w.room_dist[0][i] >= 0);
    }
  }
}

TEST_CASE("unsatisfiable configs are rejected loudly") {
  CHECK_THROWS_AS(generate_world(WorldConfig::custom(1, 0, 5, 1)), GenerationError);
  // quest too long for the object/room budget
  CHECK_THROWS_AS(generate_world(WorldConfig::custom(1, 2, 1, 9)), GenerationError);
}

TEST_CASE("vocabulary covers every token in quest actions and room names") {
  World w = generate_world(WorldConfig::preset(Preset::Small, 11));
  auto has = [&](const std::string& tok) {
    return std::find(w.vocabulary.begin(), w.vocabulary.end(), tok) != w.vocabulary.end();
  };
  for (const auto& q : w.quest) {
    for (const auto& t : tokenize(q.action)) CHECK(has(t));
  }
  for (const auto& r : w.rooms) {
    for (const auto& t : tokenize(r.name)) CHECK(has(t));
  }
}
