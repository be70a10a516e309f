#include <doctest.h>

#include <algorithm>

#include "questlab/prune.hpp"
#include "questlab/rng.hpp"
#include "support.hpp"

using namespace questlab;
using namespace questlab::testing;

namespace {

/// Three-object playground: cubical key, oak chest, rusty lamp.
World playground() {
  World w = two_room_key_world();
  ObjectSpec chest;
  chest.name = "oak chest";
  chest.kind = ObjectKind::Container;
  chest.room = 0;
  ObjectSpec lamp;
  lamp.name = "rusty lamp";
  lamp.kind = ObjectKind::Portable;
  lamp.room = 0;
  w.objects.push_back(chest);
  w.objects.push_back(lamp);
  w.finalize();
  return w;
}

Action parse(const World& w, const std::string& s) {
  return std::get<Action>(parse_command(w, s));
}

/// Straight re-statement of the scoring rules, kept deliberately naive.
int score_oracle(const World& w, const KnowledgeGraph& g, const Action& a) {
  int s = 0;
  std::vector<std::string> names;
  if (a.obj_a >= 0) names.push_back(w.objects[a.obj_a].name);
  if (a.obj_b >= 0) names.push_back(w.objects[a.obj_b].name);
  for (const auto& n : names) {
    if (g.has_node(n)) s += 1;
  }
  if (names.size() == 2 && g.has_node(names[0]) && g.has_node(names[1])) {
    if (g.path_exists(names[0], names[1]) || g.path_exists(names[1], names[0])) s += 1;
  }
  return s;
}

}  // namespace

TEST_CASE("both objects present plus a directed path scores 3") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"cubical key", "fits", "oak chest"}});
  CHECK(score_action(w, g, parse(w, "unlock oak chest with cubical key")) == 3);
}

TEST_CASE("an absent object scores 0") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"basement", "has", "oak chest"}});
  CHECK(score_action(w, g, parse(w, "take rusty lamp")) == 0);
}

TEST_CASE("a present one-object action scores exactly 1") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"basement", "has", "rusty lamp"}});
  CHECK(score_action(w, g, parse(w, "take rusty lamp")) == 1);
}

TEST_CASE("zero-object actions always score 0") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"basement", "has", "rusty lamp"}});
  CHECK(score_action(w, g, parse(w, "look")) == 0);
  CHECK(score_action(w, g, parse(w, "go north")) == 0);
}

TEST_CASE("two present objects without a path score 2") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"basement", "has", "oak chest"},
                                    {"chamber", "has", "cubical key"}});
  CHECK(score_action(w, g, parse(w, "unlock oak chest with cubical key")) == 2);
}

TEST_CASE("k larger than the action set returns a score-sorted permutation") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"basement", "has", "rusty lamp"}});
  auto all = full_action_set(w);
  auto pruned = prune_actions(w, g, all, static_cast<int>(all.size()) + 50);
  CHECK(pruned.size() == all.size());
  for (std::size_t i = 1; i < pruned.size(); ++i) {
    CHECK(score_action(w, g, pruned[i - 1]) >= score_action(w, g, pruned[i]));
  }
}

TEST_CASE("all-zero scores keep the first k in enumeration order") {
  World w = playground();
  KnowledgeGraph empty;
  auto all = full_action_set(w);
  auto idx = prune_action_indices(w, empty, all, 10);
  REQUIRE(idx.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(idx[i] == i);
}

TEST_CASE("matches the brute-force oracle on 100 random graphs") {
  World w = playground();
  // a second world with more objects makes richer action sets
  World big = generate_world(WorldConfig::custom(5, 6, 12, 4));
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const World& world = (trial % 2 == 0) ? w : big;
    auto all = full_action_set(world);

    // random graph over object names, room names, and junk labels
    std::set<Triple> ts;
    std::vector<std::string> labels{"you", "junk node"};
    for (const auto& o : world.objects) labels.push_back(o.name);
    for (const auto& r : world.rooms) labels.push_back(r.name);
    int edges = static_cast<int>(rng.index(14));
    for (int e = 0; e < edges; ++e) {
      ts.insert({labels[rng.index(labels.size())], "rel", labels[rng.index(labels.size())]});
    }
    KnowledgeGraph g(ts);

    int k = 1 + static_cast<int>(rng.index(all.size() + 10));
    auto got = prune_action_indices(world, g, all, k);

    // independent sort-by-score oracle
    std::vector<int> want(all.size());
    std::vector<int> scores(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      want[i] = static_cast<int>(i);
      scores[i] = score_oracle(world, g, all[i]);
    }
    std::stable_sort(want.begin(), want.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    want.resize(std::min<std::size_t>(k, want.size()));
    CHECK(got == want);
  }
}

TEST_CASE("adding a triple never lowers any score") {
  World w = playground();
  Rng rng(77);
  auto all = full_action_set(w);
  std::vector<std::string> labels{"you", "basement", "chamber"};
  for (const auto& o : w.objects) labels.push_back(o.name);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<Triple> ts;
    for (std::size_t e = 0; e < rng.index(6); ++e) {
      ts.insert({labels[rng.index(labels.size())], "rel", labels[rng.index(labels.size())]});
    }
    KnowledgeGraph before(ts);
    std::set<Triple> ts2 = ts;
    ts2.insert({labels[rng.index(labels.size())], "rel", labels[rng.index(labels.size())]});
    KnowledgeGraph after(ts2);
    for (const Action& a : all) {
      CHECK(score_action(w, after, a) >= score_action(w, before, a));
    }
  }
}

TEST_CASE("pruning twice gives the identical list") {
  World w = playground();
  KnowledgeGraph g(std::set<Triple>{{"cubical key", "fits", "oak chest"},
                                    {"basement", "has", "rusty lamp"}});
  auto all = full_action_set(w);
  CHECK(prune_action_indices(w, g, all, 7) == prune_action_indices(w, g, all, 7));
}

TEST_CASE("k below one is rejected") {
  World w = playground();
  CHECK_THROWS_AS(prune_action_indices(w, KnowledgeGraph{}, full_action_set(w), 0),
                  std::invalid_argument);
}

TEST_CASE("every kept action scores at least every excluded action") {
  World big = generate_world(WorldConfig::custom(9, 6, 12, 4));
  auto all = full_action_set(big);
  KnowledgeGraph g(std::set<Triple>{
      {"you", "in", big.rooms[0].name},
      {big.rooms[0].name, "has", big.objects[0].name},
      {big.rooms[0].name, "has", big.objects[2].name},
  });
  int k = 20;
  auto kept = prune_action_indices(big, g, all, k);
  std::set<int> kept_set(kept.begin(), kept.end());
  int min_kept = 1 << 30;
  for (int i : kept) min_kept = std::min(min_kept, score_action(big, g, all[i]));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!kept_set.count(static_cast<int>(i))) {
      CHECK(score_action(big, g, all[i]) <= min_kept);
    }
  }
}
