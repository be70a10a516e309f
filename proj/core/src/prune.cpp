#include "questlab/prune.hpp"

#include <algorithm>
#include <stdexcept>

namespace questlab {

int score_action(const World& world, const KnowledgeGraph& g, const Action& action) {
  int score = 0;
  const std::string* name_a = action.obj_a >= 0 ? &world.objects[action.obj_a].name : nullptr;
  const std::string* name_b = action.obj_b >= 0 ? &world.objects[action.obj_b].name : nullptr;
  bool a_in = name_a && g.has_node(*name_a);
  bool b_in = name_b && g.has_node(*name_b);
  if (a_in) score += 1;
  if (b_in) score += 1;
  if (a_in && b_in &&
      (g.path_exists(*name_a, *name_b) || g.path_exists(*name_b, *name_a))) {
    score += 1;
  }
  return score;
}

std::vector<int> prune_action_indices(const World& world, const KnowledgeGraph& g,
                                      const std::vector<Action>& all_actions, int k) {
  if (k < 1) throw std::invalid_argument("prune width k must be >= 1");
  std::vector<int> order(all_actions.size());
  std::vector<int> scores(all_actions.size());
  for (std::size_t i = 0; i < all_actions.size(); ++i) {
    order[i] = static_cast<int>(i);
    scores[i] = score_action(world, g, all_actions[i]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  order.resize(std::min<std::size_t>(k, order.size()));
  return order;
}

std::vector<Action> prune_actions(const World& world, const KnowledgeGraph& g,
                                  const std::vector<Action>& all_actions, int k) {
  std::vector<Action> out;
  for (int i : prune_action_indices(world, g, all_actions, k)) {
    out.push_back(all_actions[i]);
  }
  return out;
}

}  // namespace questlab
