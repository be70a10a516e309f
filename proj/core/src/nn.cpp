#include "questlab/nn.hpp"

#include <map>

namespace questlab::nn {

std::vector<std::vector<int>> graph_neighborhoods(const KnowledgeGraph& g, int order) {
  auto labels = g.nodes();
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    index[labels[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const auto& label : g.neighborhood(labels[i], order)) {
      out[i].push_back(index.at(label));
    }
  }
  return out;
}

}  // namespace questlab::nn
