#include "questlab/worldgen.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "questlab/engine.hpp"
#include "questlab/rng.hpp"
#include "questlab/text.hpp"
#include "questlab/vocab.hpp"

namespace questlab {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::North: return Direction::South;
    case Direction::South: return Direction::North;
    case Direction::East: return Direction::West;
    case Direction::West: return Direction::East;
  }
  return Direction::North;
}

const std::string& direction_name(Direction d) {
  return words::directions()[static_cast<int>(d)];
}

std::optional<Direction> direction_from_name(const std::string& name) {
  const auto& dirs = words::directions();
  for (int i = 0; i < 4; ++i) {
    if (dirs[i] == name) return static_cast<Direction>(i);
  }
  return std::nullopt;
}

WorldConfig WorldConfig::preset(Preset p, std::uint64_t seed) {
  WorldConfig c;
  c.seed = seed;
  if (p == Preset::Small) {
    c.num_rooms = 10;
    c.num_objects = 20;
    c.quest_length = 5;
  } else {
    c.num_rooms = 20;
    c.num_objects = 40;
    c.quest_length = 10;
  }
  return c;
}

WorldConfig WorldConfig::custom(std::uint64_t seed, int rooms, int objects, int quest_length) {
  WorldConfig c;
  c.seed = seed;
  c.num_rooms = rooms;
  c.num_objects = objects;
  c.quest_length = quest_length;
  return c;
}

int World::room_index(const std::string& name) const {
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    if (rooms[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int World::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void World::finalize() {
  const int r = static_cast<int>(rooms.size());
  exits.assign(r, {-1, -1, -1, -1});
  for (const auto& c : connections) {
    int& fwd = exits[c.room_a][static_cast<int>(c.dir)];
    int& rev = exits[c.room_b][static_cast<int>(opposite(c.dir))];
    if ((fwd != -1 && fwd != c.room_b) || (rev != -1 && rev != c.room_a)) {
      throw std::invalid_argument("inconsistent connections for room " + rooms[c.room_a].name);
    }
    fwd = c.room_b;
    rev = c.room_a;
  }

  room_dist.assign(r, std::vector<int>(r, -1));
  for (int s = 0; s < r; ++s) {
    std::deque<int> q{s};
    room_dist[s][s] = 0;
    while (!q.empty()) {
      int cur = q.front();
      q.pop_front();
      for (int d = 0; d < 4; ++d) {
        int nb = exits[cur][d];
        if (nb >= 0 && room_dist[s][nb] < 0) {
          room_dist[s][nb] = room_dist[s][cur] + 1;
          q.push_back(nb);
        }
      }
    }
  }

  take_step.assign(objects.size(), -1);
  needs_held.assign(quest.size(), -1);
  quest_suffix_room.assign(quest.size(), -1);
  for (std::size_t i = 0; i < quest.size(); ++i) {
    const QuestStep& s = quest[i];
    quest_suffix_room[i] = s.room;
    switch (s.kind) {
      case QuestKind::Take:
        take_step[s.object_a] = static_cast<int>(i);
        break;
      case QuestKind::Unlock:
        needs_held[i] = s.object_b;
        break;
      case QuestKind::Insert:
        needs_held[i] = s.object_a;
        break;
      case QuestKind::Go:
        break;
    }
  }
}

bool World::operator==(const World& o) const {
  return config == o.config && rooms == o.rooms && connections == o.connections &&
         objects == o.objects && quest == o.quest && vocabulary == o.vocabulary;
}

namespace {

struct NamePools {
  std::vector<std::string> keys, portables, containers, scenery;

  static NamePools build(Rng& rng) {
    NamePools p;
    for (const auto& adj : words::portable_adjectives()) {
      p.keys.push_back(adj + " key");
      for (const auto& noun : words::portable_nouns()) {
        if (noun != "key") p.portables.push_back(adj + " " + noun);
      }
    }
    for (const auto& adj : words::container_adjectives()) {
      for (const auto& noun : words::container_nouns()) {
        p.containers.push_back(adj + " " + noun);
      }
    }
    for (const auto& adj : words::scenery_adjectives()) {
      for (const auto& noun : words::scenery_nouns()) {
        p.scenery.push_back(adj + " " + noun);
      }
    }
    rng.shuffle(p.keys);
    rng.shuffle(p.portables);
    rng.shuffle(p.containers);
    rng.shuffle(p.scenery);
    return p;
  }

  std::string pop(std::vector<std::string>& pool) {
    if (pool.empty()) throw GenerationError("unsatisfiable config: name pool exhausted");
    std::string s = pool.back();
    pool.pop_back();
    return s;
  }
};

struct LatticeLayout {
  std::vector<RoomSpec> rooms;
  std::vector<Connection> connections;
};

LatticeLayout build_layout(const WorldConfig& cfg, Rng& rng) {
  const auto& names = words::rooms();
  if (cfg.num_rooms > static_cast<int>(names.size())) {
    throw GenerationError("unsatisfiable config: more rooms than room words");
  }
  auto name_idx = rng.sample_indices(names.size(), cfg.num_rooms);

  static const int dx[4] = {0, 0, 1, -1};  // N,S,E,W on the lattice
  static const int dy[4] = {1, -1, 0, 0};

  LatticeLayout out;
  std::map<std::pair<int, int>, int> cell;
  out.rooms.push_back({names[name_idx[0]], 0, 0});
  cell[{0, 0}] = 0;

  for (int i = 1; i < cfg.num_rooms; ++i) {
    // attach to a random placed room that still has a free lattice neighbor
    std::vector<std::pair<int, int>> options;  // (room, direction)
    for (int r = 0; r < i; ++r) {
      for (int d = 0; d < 4; ++d) {
        if (!cell.count({out.rooms[r].x + dx[d], out.rooms[r].y + dy[d]})) {
          options.push_back({r, d});
        }
      }
    }
    auto [r, d] = options[rng.index(options.size())];
    RoomSpec spec{names[name_idx[i]], out.rooms[r].x + dx[d], out.rooms[r].y + dy[d]};
    cell[{spec.x, spec.y}] = i;
    out.rooms.push_back(spec);
    out.connections.push_back({r, static_cast<Direction>(d), i});
  }

  // extra edges between adjacent occupied cells, so maps are not always trees
  std::set<std::pair<int, int>> connected;
  for (const auto& c : out.connections) {
    connected.insert({std::min(c.room_a, c.room_b), std::max(c.room_a, c.room_b)});
  }
  for (int r = 0; r < cfg.num_rooms; ++r) {
    for (int d = 0; d < 4; ++d) {
      auto it = cell.find({out.rooms[r].x + dx[d], out.rooms[r].y + dy[d]});
      if (it == cell.end()) continue;
      int other = it->second;
      std::pair<int, int> pair{std::min(r, other), std::max(r, other)};
      if (connected.count(pair)) continue;
      if (rng.chance(0.35)) {
        out.connections.push_back({r, static_cast<Direction>(d), other});
        connected.insert(pair);
      }
    }
  }
  return out;
}

/// Shortest path room sequence, ties broken by direction order N,S,E,W.
std::vector<int> bfs_path(const World& w, int from, int to) {
  std::vector<int> parent(w.rooms.size(), -1);
  std::deque<int> q{from};
  parent[from] = from;
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    if (cur == to) break;
    for (int d = 0; d < 4; ++d) {
      int nb = w.exits[cur][d];
      if (nb >= 0 && parent[nb] < 0) {
        parent[nb] = cur;
        q.push_back(nb);
      }
    }
  }
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

Direction step_direction(const World& w, int from, int to) {
  for (int d = 0; d < 4; ++d) {
    if (w.exits[from][d] == to) return static_cast<Direction>(d);
  }
  throw std::logic_error("rooms not adjacent");
}

struct QuestPlan {
  int gates = 0;          // locked chests chained by keys
  bool final_insert = false;
  int nav = 0;            // total movement steps in the script
};

// quest length = 1 (first take) + 2*gates + nav + (final_insert ? 1 : 0)
std::vector<QuestPlan> feasible_plans(const WorldConfig& cfg) {
  std::vector<QuestPlan> plans;
  const int L = cfg.quest_length;
  for (int g = 0; 1 + 2 * g <= L; ++g) {
    for (int e = 0; e <= 1; ++e) {
      int nav = L - 1 - 2 * g - e;
      if (nav < g) continue;              // each gate room needs >=1 move to reach
      if (g == 0 && e == 0 && nav != 0) continue;  // no target to walk toward
      int quest_objects = (g == 0 ? 1 : 2 * g + 1) + e;
      if (quest_objects > cfg.num_objects) continue;
      if (g + 1 > cfg.num_rooms) continue;
      plans.push_back({g, e == 1, nav});
    }
  }
  return plans;
}

}  // namespace

World generate_world(const WorldConfig& config) {
  if (config.num_rooms <= 0 || config.num_objects <= 0 || config.quest_length < 1) {
    throw GenerationError("unsatisfiable config: counts must be positive");
  }
  Rng rng = Rng::stream(config.seed, 0x9e1d0057u);

  LatticeLayout layout = build_layout(config, rng);

  World world;
  world.config = config;
  world.rooms = layout.rooms;
  world.connections = layout.connections;
  world.finalize();

  NamePools pools = NamePools::build(rng);

  const int L = config.quest_length;
  auto plans = feasible_plans(config);
  if (plans.empty()) throw GenerationError("unsatisfiable config: no quest plan fits");

  bool built = false;
  for (int attempt = 0; attempt < 100 && !built; ++attempt) {
    QuestPlan plan = plans[rng.index(plans.size())];

    // split the nav budget: one segment per gate (>=1 each), plus the case leg
    std::vector<int> segments(plan.gates, 1);
    if (plan.final_insert) segments.push_back(0);
    int spare = plan.nav - plan.gates;
    if (segments.empty() && spare > 0) continue;
    for (int i = 0; i < spare; ++i) {
      segments[rng.index(segments.size())] += 1;
    }

    // embed: pick rooms at the exact segment distances
    std::vector<int> gate_rooms;
    int case_room = 0;
    std::set<int> used{0};
    int cur = 0;
    bool ok = true;
    for (int i = 0; i < plan.gates && ok; ++i) {
      std::vector<int> at_dist;
      for (int r = 0; r < config.num_rooms; ++r) {
        if (!used.count(r) && world.room_dist[cur][r] == segments[i]) at_dist.push_back(r);
      }
      if (at_dist.empty()) {
        ok = false;
        break;
      }
      int r = at_dist[rng.index(at_dist.size())];
      gate_rooms.push_back(r);
      used.insert(r);
      cur = r;
    }
    if (ok && plan.final_insert) {
      int want = segments.back();
      std::vector<int> at_dist;
      for (int r = 0; r < config.num_rooms; ++r) {
        if (world.room_dist[cur][r] == want) at_dist.push_back(r);
      }
      if (at_dist.empty()) {
        ok = false;
      } else {
        case_room = at_dist[rng.index(at_dist.size())];
      }
    }
    if (!ok) continue;

    // objects for the chain: keys, locked chests, the goal item, the case
    world.objects.clear();
    std::vector<int> key_ids, chest_ids;
    for (int i = 0; i < plan.gates; ++i) {
      ObjectSpec key;
      key.name = pools.pop(pools.keys);
      world.objects.push_back(key);
      key_ids.push_back(static_cast<int>(world.objects.size()) - 1);
    }
    for (int i = 0; i < plan.gates; ++i) {
      ObjectSpec chest;
      chest.name = pools.pop(pools.containers);
      chest.kind = ObjectKind::Container;
      chest.room = gate_rooms[i];
      chest.key = key_ids[i];
      chest.starts_locked = true;
      world.objects.push_back(chest);
      chest_ids.push_back(static_cast<int>(world.objects.size()) - 1);
    }
    ObjectSpec goal;
    goal.name = pools.pop(pools.portables);
    world.objects.push_back(goal);
    const int goal_id = static_cast<int>(world.objects.size()) - 1;
    int case_id = -1;
    if (plan.final_insert) {
      ObjectSpec cs;
      cs.name = pools.pop(pools.containers);
      cs.kind = ObjectKind::Container;
      cs.room = case_room;
      cs.starts_open = true;
      world.objects.push_back(cs);
      case_id = static_cast<int>(world.objects.size()) - 1;
    }

    // placements: first chain item free in the start room, the rest nested
    const int first_item = plan.gates > 0 ? key_ids[0] : goal_id;
    world.objects[first_item].room = 0;
    for (int i = 0; i < plan.gates; ++i) {
      int content = (i + 1 < plan.gates) ? key_ids[i + 1] : goal_id;
      world.objects[content].room = -1;
      world.objects[content].container = chest_ids[i];
    }

    // script
    world.quest.clear();
    auto add_go_path = [&](int from, int to) {
      auto path = bfs_path(world, from, to);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Direction d = step_direction(world, path[i], path[i + 1]);
        QuestStep s;
        s.kind = QuestKind::Go;
        s.dir = d;
        s.room = path[i];
        s.action = "go " + direction_name(d);
        world.quest.push_back(s);
      }
    };
    {
      QuestStep s;
      s.kind = QuestKind::Take;
      s.room = 0;
      s.object_a = first_item;
      s.action = "take " + world.objects[first_item].name;
      world.quest.push_back(s);
    }
    cur = 0;
    for (int i = 0; i < plan.gates; ++i) {
      add_go_path(cur, gate_rooms[i]);
      cur = gate_rooms[i];
      QuestStep u;
      u.kind = QuestKind::Unlock;
      u.room = cur;
      u.object_a = chest_ids[i];
      u.object_b = key_ids[i];
      u.action = "unlock " + world.objects[chest_ids[i]].name + " with " +
                 world.objects[key_ids[i]].name;
      world.quest.push_back(u);
      int content = (i + 1 < plan.gates) ? key_ids[i + 1] : goal_id;
      QuestStep t;
      t.kind = QuestKind::Take;
      t.room = cur;
      t.object_a = content;
      t.action = "take " + world.objects[content].name;
      world.quest.push_back(t);
    }
    if (plan.final_insert) {
      add_go_path(cur, case_room);
      QuestStep ins;
      ins.kind = QuestKind::Insert;
      ins.room = case_room;
      ins.object_a = goal_id;
      ins.object_b = case_id;
      ins.action = "insert " + world.objects[goal_id].name + " into " +
                   world.objects[case_id].name;
      world.quest.push_back(ins);
    }

    if (static_cast<int>(world.quest.size()) != L) continue;  // embedding drifted
    built = true;
  }
  if (!built) throw GenerationError("unsatisfiable config: quest embedding failed");

  // decoys up to the object budget
  int budget = config.num_objects - static_cast<int>(world.objects.size());
  if (budget < 0) {
    throw GenerationError("unsatisfiable config: quest needs more objects than allowed");
  }
  while (budget > 0) {
    double roll = rng.real();
    if (roll < 0.45 || budget == 1) {
      ObjectSpec o;
      o.name = pools.pop(pools.portables);
      o.room = static_cast<int>(rng.index(world.rooms.size()));
      world.objects.push_back(o);
      budget -= 1;
    } else if (roll < 0.70) {
      ObjectSpec o;
      o.name = pools.pop(pools.scenery);
      o.kind = ObjectKind::Scenery;
      o.room = static_cast<int>(rng.index(world.rooms.size()));
      world.objects.push_back(o);
      budget -= 1;
    } else {
      ObjectSpec box;
      box.name = pools.pop(pools.containers);
      box.kind = ObjectKind::Container;
      box.room = static_cast<int>(rng.index(world.rooms.size()));
      double kind = rng.real();
      if (kind < 0.5 && budget >= 2) {
        // locked decoy paired with its own key somewhere on a floor
        ObjectSpec key;
        key.name = pools.pop(pools.keys);
        key.room = static_cast<int>(rng.index(world.rooms.size()));
        world.objects.push_back(key);
        box.key = static_cast<int>(world.objects.size()) - 1;
        box.starts_locked = true;
        world.objects.push_back(box);
        budget -= 2;
      } else {
        box.starts_open = kind >= 0.75;
        world.objects.push_back(box);
        budget -= 1;
      }
    }
  }

  // vocabulary: everything the engine can ever print or accept
  std::set<std::string> vocab;
  for (const auto& r : world.rooms) {
    for (const auto& t : tokenize(r.name)) vocab.insert(t);
  }
  for (const auto& o : world.objects) {
    for (const auto& t : tokenize(o.name)) vocab.insert(t);
  }
  for (const auto& d : words::directions()) vocab.insert(d);
  for (const auto& g : words::grammar()) vocab.insert(g);
  world.vocabulary.assign(vocab.begin(), vocab.end());

  world.finalize();
  return world;
}

WorldStats world_stats(const World& world) {
  WorldStats s;
  s.branching_factor = static_cast<int>(full_action_set(world).size());
  s.vocab_size = static_cast<int>(world.vocabulary.size());
  auto [state, obs] = reset(world);
  double total = 0.0;
  for (std::size_t r = 0; r < world.rooms.size(); ++r) {
    total += static_cast<double>(
        tokenize(describe_room(world, state, static_cast<int>(r))).size());
  }
  s.avg_words_per_obs =
      world.rooms.empty() ? 0.0 : total / static_cast<double>(world.rooms.size());
  return s;
}

}  // namespace questlab
