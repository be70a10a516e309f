#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "questlab/worldgen.hpp"

namespace questlab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "questlab.world";
constexpr int kVersion = 1;

const char* kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::Portable: return "portable";
    case ObjectKind::Container: return "container";
    case ObjectKind::Scenery: return "scenery";
  }
  return "portable";
}

ObjectKind kind_from(const std::string& s) {
  if (s == "portable") return ObjectKind::Portable;
  if (s == "container") return ObjectKind::Container;
  if (s == "scenery") return ObjectKind::Scenery;
  throw std::invalid_argument("unknown object kind: " + s);
}

const char* quest_kind_name(QuestKind k) {
  switch (k) {
    case QuestKind::Go: return "go";
    case QuestKind::Take: return "take";
    case QuestKind::Unlock: return "unlock";
    case QuestKind::Insert: return "insert";
  }
  return "go";
}

QuestKind quest_kind_from(const std::string& s) {
  if (s == "go") return QuestKind::Go;
  if (s == "take") return QuestKind::Take;
  if (s == "unlock") return QuestKind::Unlock;
  if (s == "insert") return QuestKind::Insert;
  throw std::invalid_argument("unknown quest step kind: " + s);
}

}  // namespace

std::string world_to_json(const World& w) {
  ordered_json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["config"] = {{"seed", w.config.seed},
                 {"num_rooms", w.config.num_rooms},
                 {"num_objects", w.config.num_objects},
                 {"quest_length", w.config.quest_length}};
  j["rooms"] = ordered_json::array();
  for (const auto& r : w.rooms) {
    j["rooms"].push_back({{"name", r.name}, {"x", r.x}, {"y", r.y}});
  }
  j["connections"] = ordered_json::array();
  for (const auto& c : w.connections) {
    j["connections"].push_back(
        {{"from", c.room_a}, {"dir", direction_name(c.dir)}, {"to", c.room_b}});
  }
  j["objects"] = ordered_json::array();
  for (const auto& o : w.objects) {
    ordered_json obj = {{"name", o.name},
                        {"kind", kind_name(o.kind)},
                        {"room", o.room},
                        {"container", o.container}};
    if (o.kind == ObjectKind::Container) {
      obj["key"] = o.key;
      obj["locked"] = o.starts_locked;
      obj["open"] = o.starts_open;
    }
    j["objects"].push_back(obj);
  }
  j["quest"] = ordered_json::array();
  for (const auto& q : w.quest) {
    j["quest"].push_back({{"kind", quest_kind_name(q.kind)},
                          {"action", q.action},
                          {"room", q.room},
                          {"object_a", q.object_a},
                          {"object_b", q.object_b},
                          {"dir", direction_name(q.dir)}});
  }
  j["vocabulary"] = w.vocabulary;
  return j.dump(2) + "\n";
}

World world_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (j.value("schema", "") != kSchema) {
    throw std::invalid_argument("not a questlab world document");
  }
  if (j.value("version", 0) != kVersion) {
    throw std::invalid_argument("unsupported world schema version");
  }
  World w;
  const auto& cfg = j.at("config");
  w.config.seed = cfg.at("seed").get<std::uint64_t>();
  w.config.num_rooms = cfg.at("num_rooms").get<int>();
  w.config.num_objects = cfg.at("num_objects").get<int>();
  w.config.quest_length = cfg.at("quest_length").get<int>();
  for (const auto& r : j.at("rooms")) {
    w.rooms.push_back({r.at("name").get<std::string>(), r.at("x").get<int>(),
                       r.at("y").get<int>()});
  }
  for (const auto& c : j.at("connections")) {
    auto dir = direction_from_name(c.at("dir").get<std::string>());
    if (!dir) throw std::invalid_argument("bad direction in connection");
    w.connections.push_back({c.at("from").get<int>(), *dir, c.at("to").get<int>()});
  }
  for (const auto& o : j.at("objects")) {
    ObjectSpec spec;
    spec.name = o.at("name").get<std::string>();
    spec.kind = kind_from(o.at("kind").get<std::string>());
    spec.room = o.at("room").get<int>();
    spec.container = o.at("container").get<int>();
    if (spec.kind == ObjectKind::Container) {
      spec.key = o.value("key", -1);
      spec.starts_locked = o.value("locked", false);
      spec.starts_open = o.value("open", false);
    }
    w.objects.push_back(spec);
  }
  for (const auto& q : j.at("quest")) {
    QuestStep step;
    step.kind = quest_kind_from(q.at("kind").get<std::string>());
    step.action = q.at("action").get<std::string>();
    step.room = q.at("room").get<int>();
    step.object_a = q.at("object_a").get<int>();
    step.object_b = q.at("object_b").get<int>();
    auto dir = direction_from_name(q.at("dir").get<std::string>());
    if (!dir) throw std::invalid_argument("bad direction in quest step");
    step.dir = *dir;
    w.quest.push_back(step);
  }
  w.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
  w.finalize();
  return w;
}

void save_world(const World& w, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << world_to_json(w);
}

World load_world(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return world_from_json(text);
}

}  // namespace questlab
