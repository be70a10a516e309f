#pragma once

#include <vector>

#include "questlab/engine.hpp"
#include "questlab/kg.hpp"

namespace questlab {

/// Graph score of an action: +1 per action object present as a graph node,
/// +1 if a directed path connects the two objects of a two-object action
/// (either direction, counted once). Range [0, 3].
int score_action(const World& world, const KnowledgeGraph& g, const Action& action);

/// Indices into `all_actions` of the top-k by (score desc, index asc).
/// Stable, deterministic, pure.
std::vector<int> prune_action_indices(const World& world, const KnowledgeGraph& g,
                                      const std::vector<Action>& all_actions, int k);

/// Same selection, returning the actions themselves (the paper's A_t).
std::vector<Action> prune_actions(const World& world, const KnowledgeGraph& g,
                                  const std::vector<Action>& all_actions, int k);

}  // namespace questlab
