#include "questlab/engine.hpp"

#include <algorithm>
#include <cassert>

#include "questlab/text.hpp"
#include "questlab/vocab.hpp"

namespace questlab {

namespace {

constexpr int kUnreachable = 1 << 20;

const char* kFailureText = "You can't do that.";

const std::string& verb_name(Verb v) {
  static const std::vector<std::string> names = {
      "go", "look", "inventory", "take", "drop", "open", "examine", "insert", "unlock"};
  return names[static_cast<int>(v)];
}

bool is_container(const World& w, int obj) {
  return w.objects[obj].kind == ObjectKind::Container;
}

/// Floor room of an object, looking through one level of containment.
/// -1 when the object is in the inventory.
int floor_room(const World& w, const GameState& s, int obj) {
  const ObjectPlace& p = s.object_places[obj];
  switch (p.kind) {
    case ObjectPlace::Kind::Inventory:
      return -1;
    case ObjectPlace::Kind::Room:
      return p.id;
    case ObjectPlace::Kind::Inside: {
      const ObjectPlace& cp = s.object_places[p.id];
      return cp.kind == ObjectPlace::Kind::Room ? cp.id : -1;
    }
  }
  return -1;
}

/// Object can be picked up or inspected from the agent's room: on the floor,
/// or inside an open container standing there.
bool visible_here(const World& w, const GameState& s, int obj) {
  const ObjectPlace& p = s.object_places[obj];
  if (p.kind == ObjectPlace::Kind::Room) return p.id == s.agent_room;
  if (p.kind == ObjectPlace::Kind::Inside) {
    return s.container_states[p.id] == ContainerState::Open &&
           floor_room(w, s, obj) == s.agent_room;
  }
  return false;
}

std::string carrying_sentence(const World& w, const GameState& s) {
  auto inv = s.inventory();
  if (inv.empty()) return "You are carrying nothing.";
  std::string out = "You are carrying:";
  for (std::size_t i = 0; i < inv.size(); ++i) {
    out += (i == 0 ? " " : ", ");
    const std::string& name = w.objects[inv[i]].name;
    out += article(name) + " " + name;
  }
  out += ".";
  return out;
}

Observation make_observation(std::string text) {
  Observation o;
  o.tokens = tokenize(text);
  o.text = std::move(text);
  return o;
}

}  // namespace

std::vector<int> GameState::inventory() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < object_places.size(); ++i) {
    if (object_places[i].kind == ObjectPlace::Kind::Inventory) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::string describe_room(const World& world, const GameState& state, int room) {
  std::string out = "You are in the " + world.rooms[room].name + ".";
  for (int d = 0; d < 4; ++d) {
    if (world.exits[room][d] >= 0) {
      out += " There is an exit to the " + words::directions()[d] + ".";
    }
  }
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const ObjectPlace& p = state.object_places[i];
    if (p.kind != ObjectPlace::Kind::Room || p.id != room) continue;
    const std::string& name = world.objects[i].name;
    out += " You see " + article(name) + " " + name + " here.";
    if (is_container(world, static_cast<int>(i))) {
      switch (state.container_states[i]) {
        case ContainerState::Locked: out += " It is locked."; break;
        case ContainerState::Closed: out += " It is closed."; break;
        case ContainerState::Open: out += " It is open."; break;
        case ContainerState::None: break;
      }
      if (state.container_states[i] == ContainerState::Open) {
        for (std::size_t j = 0; j < world.objects.size(); ++j) {
          const ObjectPlace& cp = state.object_places[j];
          if (cp.kind == ObjectPlace::Kind::Inside && cp.id == static_cast<int>(i)) {
            const std::string& cn = world.objects[j].name;
            out += " You see " + article(cn) + " " + cn + " here.";
          }
        }
      }
    }
  }
  return out;
}

std::pair<GameState, Observation> reset(const World& world) {
  GameState s;
  s.agent_room = world.start_room();
  s.quest_stage = 0;
  s.steps_taken = 0;
  s.object_places.resize(world.objects.size());
  s.container_states.assign(world.objects.size(), ContainerState::None);
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const ObjectSpec& o = world.objects[i];
    if (o.container >= 0) {
      s.object_places[i] = {ObjectPlace::Kind::Inside, o.container};
    } else {
      s.object_places[i] = {ObjectPlace::Kind::Room, o.room};
    }
    if (o.kind == ObjectKind::Container) {
      s.container_states[i] = o.starts_locked  ? ContainerState::Locked
                              : o.starts_open ? ContainerState::Open
                                              : ContainerState::Closed;
    }
  }
  return {s, make_observation(describe_room(world, s, s.agent_room))};
}

ParseResult parse_command(const World& world, const std::string& text) {
  auto toks = tokenize(text);
  if (toks.empty()) {
    return ParseError{ParseError::Kind::UnknownVerb, "say something"};
  }
  const std::string& verb = toks[0];
  std::vector<std::string> rest(toks.begin() + 1, toks.end());

  auto object_of = [&](const std::vector<std::string>& phrase) {
    return world.object_index(join(phrase));
  };
  auto make = [&](Verb v, int a, int b, const std::string& surface) {
    Action act;
    act.verb = v;
    act.obj_a = a;
    act.obj_b = b;
    act.surface = surface;
    return act;
  };

  if (verb == "go") {
    if (rest.size() != 1) {
      return ParseError{ParseError::Kind::ArityMismatch, "go takes a direction"};
    }
    auto dir = direction_from_name(rest[0]);
    if (!dir) {
      return ParseError{ParseError::Kind::UnknownObject, "unknown direction: " + rest[0]};
    }
    Action act;
    act.verb = Verb::Go;
    act.dir = *dir;
    act.surface = "go " + rest[0];
    return act;
  }
  if (verb == "look" || verb == "inventory") {
    if (!rest.empty()) {
      return ParseError{ParseError::Kind::ArityMismatch, verb + " takes no object"};
    }
    Action act;
    act.verb = verb == "look" ? Verb::Look : Verb::Inventory;
    act.surface = verb;
    return act;
  }
  if (verb == "take" || verb == "drop" || verb == "open" || verb == "examine") {
    if (rest.empty()) {
      return ParseError{ParseError::Kind::ArityMismatch, verb + " needs an object"};
    }
    int obj = object_of(rest);
    if (obj < 0) {
      return ParseError{ParseError::Kind::UnknownObject, "unknown object: " + join(rest)};
    }
    Verb v = verb == "take"   ? Verb::Take
             : verb == "drop" ? Verb::Drop
             : verb == "open" ? Verb::Open
                              : Verb::Examine;
    return make(v, obj, -1, verb + " " + world.objects[obj].name);
  }
  if (verb == "insert" || verb == "unlock") {
    const std::string sep = verb == "insert" ? "into" : "with";
    auto it = std::find(rest.begin(), rest.end(), sep);
    if (it == rest.end() || it == rest.begin() || it + 1 == rest.end()) {
      return ParseError{ParseError::Kind::ArityMismatch,
                        verb + " needs two objects joined by '" + sep + "'"};
    }
    std::vector<std::string> first(rest.begin(), it), second(it + 1, rest.end());
    int a = object_of(first), b = object_of(second);
    if (a < 0) {
      return ParseError{ParseError::Kind::UnknownObject, "unknown object: " + join(first)};
    }
    if (b < 0) {
      return ParseError{ParseError::Kind::UnknownObject, "unknown object: " + join(second)};
    }
    Verb v = verb == "insert" ? Verb::Insert : Verb::Unlock;
    return make(v, a, b,
                verb + " " + world.objects[a].name + " " + sep + " " + world.objects[b].name);
  }
  return ParseError{ParseError::Kind::UnknownVerb, "unknown verb: " + verb};
}

bool can_perform(const World& world, const GameState& s, const Action& a) {
  switch (a.verb) {
    case Verb::Go:
      return world.exits[s.agent_room][static_cast<int>(a.dir)] >= 0;
    case Verb::Look:
    case Verb::Inventory:
      return true;
    case Verb::Take:
      return world.objects[a.obj_a].kind == ObjectKind::Portable &&
             visible_here(world, s, a.obj_a);
    case Verb::Drop:
      return s.holding(a.obj_a);
    case Verb::Open:
      return is_container(world, a.obj_a) &&
             s.object_places[a.obj_a].kind == ObjectPlace::Kind::Room &&
             s.object_places[a.obj_a].id == s.agent_room &&
             s.container_states[a.obj_a] == ContainerState::Closed;
    case Verb::Examine:
      return s.holding(a.obj_a) || visible_here(world, s, a.obj_a);
    case Verb::Insert:
      return s.holding(a.obj_a) && is_container(world, a.obj_b) &&
             s.object_places[a.obj_b].kind == ObjectPlace::Kind::Room &&
             s.object_places[a.obj_b].id == s.agent_room &&
             s.container_states[a.obj_b] == ContainerState::Open;
    case Verb::Unlock:
      return is_container(world, a.obj_a) &&
             s.object_places[a.obj_a].kind == ObjectPlace::Kind::Room &&
             s.object_places[a.obj_a].id == s.agent_room &&
             s.container_states[a.obj_a] == ContainerState::Locked &&
             s.holding(a.obj_b) && world.objects[a.obj_a].key == a.obj_b;
  }
  return false;
}

bool quest_done(const World& world, const GameState& state) {
  return state.quest_stage >= static_cast<int>(world.quest.size());
}

int min_remaining_actions(const World& world, const GameState& state) {
  const int L = static_cast<int>(world.quest.size());
  const int k = state.quest_stage;
  if (k >= L) return 0;
  const int base = L - k;
  const int p = state.agent_room;

  // Locate the one quest object that can be out of position: either the item
  // a pending unlock/insert needs (already taken, then dropped or stashed),
  // or a pending take's object that was moved (hand-built worlds only).
  int fix_step = -1;
  int fix_obj = -1;
  bool fix_is_take = false;
  for (int j = k; j < L && fix_step < 0; ++j) {
    const QuestStep& st = world.quest[j];
    if (st.kind == QuestKind::Take) {
      int o = st.object_a;
      const ObjectPlace& pl = state.object_places[o];
      bool in_position =
          (pl.kind == ObjectPlace::Kind::Room && pl.id == st.room) ||
          (pl.kind == ObjectPlace::Kind::Inside && floor_room(world, state, o) == st.room);
      if (!in_position) {
        fix_step = j;
        fix_obj = o;
        fix_is_take = true;
      }
    } else if (world.needs_held[j] >= 0) {
      int o = world.needs_held[j];
      if (world.take_step[o] >= 0 && world.take_step[o] >= k) continue;  // acquired on script
      if (!state.holding(o)) {
        fix_step = j;
        fix_obj = o;
      }
    }
  }

  if (fix_step < 0) {
    return world.room_dist[p][world.quest[k].room] + base;
  }

  // in-inventory take fix: drop it at the step room on the way through
  if (fix_is_take && state.holding(fix_obj)) {
    return world.room_dist[p][world.quest[k].room] + base + 1;
  }

  int x = floor_room(world, state, fix_obj);
  if (x < 0) return kUnreachable;  // sealed inside a closed container
  const ObjectPlace& pl = state.object_places[fix_obj];
  if (pl.kind == ObjectPlace::Kind::Inside &&
      state.container_states[pl.id] != ContainerState::Open) {
    return kUnreachable;
  }

  // Fetch the object from room x somewhere on the walk to step fix_step:
  // either on the way in (before reaching the next step room), or as a
  // round trip from one of the script rooms passed between now and then.
  const int a_k = world.quest[k].room;
  int best = world.room_dist[p][x] + world.room_dist[x][a_k];
  int detour = kUnreachable;
  for (int j = k; j <= fix_step; ++j) {
    detour = std::min(detour, 2 * world.room_dist[world.quest[j].room][x]);
  }
  best = std::min(best, world.room_dist[p][a_k] + detour);
  int surcharge = fix_is_take ? 2 : 1;  // pick up (+ drop it back for a take step)
  return base + surcharge + best;
}

int reward(const World& world, const GameState& prev, const GameState& next) {
  if (next.quest_stage > prev.quest_stage) return 1;
  if (min_remaining_actions(world, next) > min_remaining_actions(world, prev)) return -1;
  return 0;
}

StepResult step(const World& world, const GameState& state, const Action& action) {
  StepResult out;
  out.state = state;
  out.state.steps_taken += 1;

  if (!can_perform(world, state, action)) {
    out.obs = make_observation(kFailureText);
    out.reward = 0;
    out.done = quest_done(world, out.state);
    return out;
  }

  GameState& s = out.state;
  std::string confirmation;
  bool include_room = true;
  bool include_carrying = false;

  switch (action.verb) {
    case Verb::Go: {
      s.agent_room = world.exits[s.agent_room][static_cast<int>(action.dir)];
      confirmation = "You go " + direction_name(action.dir) + ".";
      break;
    }
    case Verb::Look:
      break;
    case Verb::Inventory:
      include_room = false;
      include_carrying = true;
      break;
    case Verb::Take:
      s.object_places[action.obj_a] = {ObjectPlace::Kind::Inventory, -1};
      confirmation = "You take the " + world.objects[action.obj_a].name + ".";
      include_carrying = true;
      break;
    case Verb::Drop:
      s.object_places[action.obj_a] = {ObjectPlace::Kind::Room, s.agent_room};
      confirmation = "You drop the " + world.objects[action.obj_a].name + ".";
      include_carrying = true;
      break;
    case Verb::Open:
      s.container_states[action.obj_a] = ContainerState::Open;
      confirmation = "You open the " + world.objects[action.obj_a].name + ".";
      break;
    case Verb::Unlock:
      // unlocking swings the lid open, so the contents are reachable at once
      s.container_states[action.obj_a] = ContainerState::Open;
      confirmation = "You unlock the " + world.objects[action.obj_a].name + " with the " +
                     world.objects[action.obj_b].name + ".";
      break;
    case Verb::Insert:
      s.object_places[action.obj_a] = {ObjectPlace::Kind::Inside, action.obj_b};
      confirmation = "You insert the " + world.objects[action.obj_a].name + " into the " +
                     world.objects[action.obj_b].name + ".";
      break;
    case Verb::Examine: {
      const std::string& name = world.objects[action.obj_a].name;
      confirmation = "You examine the " + name + ".";
      if (is_container(world, action.obj_a)) {
        switch (state.container_states[action.obj_a]) {
          case ContainerState::Locked: confirmation += " It is locked."; break;
          case ContainerState::Closed: confirmation += " It is closed."; break;
          case ContainerState::Open: confirmation += " It is open."; break;
          case ContainerState::None: break;
        }
      } else {
        confirmation += " There is nothing special about it.";
      }
      include_room = false;
      break;
    }
  }

  // quest progress: the scripted action performed in its scripted room
  if (!quest_done(world, state)) {
    const QuestStep& qs = world.quest[state.quest_stage];
    if (qs.action == action.surface && qs.room == state.agent_room) {
      s.quest_stage += 1;
    }
  }

  std::string text = confirmation;
  if (include_room) {
    if (!text.empty()) text += " ";
    text += describe_room(world, s, s.agent_room);
  }
  if (include_carrying) {
    if (!text.empty()) text += " ";
    text += carrying_sentence(world, s);
  }
  out.done = quest_done(world, s);
  if (out.done) text += " You have completed the quest!";
  out.obs = make_observation(text);
  out.reward = reward(world, state, s);
  return out;
}

std::vector<Action> full_action_set(const World& world) {
  std::vector<Action> out;
  const int n = static_cast<int>(world.objects.size());
  for (int d = 0; d < 4; ++d) {
    Action a;
    a.verb = Verb::Go;
    a.dir = static_cast<Direction>(d);
    a.surface = "go " + words::directions()[d];
    out.push_back(a);
  }
  for (Verb v : {Verb::Look, Verb::Inventory}) {
    Action a;
    a.verb = v;
    a.surface = verb_name(v);
    out.push_back(a);
  }
  for (Verb v : {Verb::Take, Verb::Drop, Verb::Open, Verb::Examine}) {
    for (int i = 0; i < n; ++i) {
      Action a;
      a.verb = v;
      a.obj_a = i;
      a.surface = verb_name(v) + " " + world.objects[i].name;
      out.push_back(a);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Action a;
      a.verb = Verb::Insert;
      a.obj_a = i;
      a.obj_b = j;
      a.surface = "insert " + world.objects[i].name + " into " + world.objects[j].name;
      out.push_back(a);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Action a;
      a.verb = Verb::Unlock;
      a.obj_a = i;
      a.obj_b = j;
      a.surface = "unlock " + world.objects[i].name + " with " + world.objects[j].name;
      out.push_back(a);
    }
  }
  return out;
}

std::vector<Action> admissible_actions(const World& world, const GameState& state) {
  std::vector<Action> out;
  for (const Action& a : full_action_set(world)) {
    if (can_perform(world, state, a)) out.push_back(a);
  }
  return out;
}

std::vector<Action> oracle_walkthrough(const World& world) {
  std::vector<Action> out;
  out.reserve(world.quest.size());
  for (const QuestStep& s : world.quest) {
    ParseResult r = parse_command(world, s.action);
    assert(std::holds_alternative<Action>(r));
    out.push_back(std::get<Action>(r));
  }
  return out;
}

}  // namespace questlab
