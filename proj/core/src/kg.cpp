#include "questlab/kg.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "questlab/text.hpp"

namespace questlab {

namespace {

/// Adjacency over node labels. Directed edges; callers add reverses if needed.
std::map<std::string, std::vector<std::string>> adjacency(const std::set<Triple>& triples,
                                                          bool undirected) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const Triple& t : triples) {
    adj[t.subject].push_back(t.object);
    if (undirected) {
      adj[t.object].push_back(t.subject);
    } else {
      adj.try_emplace(t.object);
    }
  }
  return adj;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?') {
      if (!cur.empty()) out.push_back(normalize(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(normalize(cur));
  return out;
}

bool consume_prefix(std::string& s, const std::string& prefix) {
  if (s.rfind(prefix, 0) != 0) return false;
  s.erase(0, prefix.size());
  return true;
}

bool consume_suffix(std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
  s.erase(s.size() - suffix.size());
  return true;
}

std::string strip_article(std::string s) {
  if (!consume_prefix(s, "a ")) consume_prefix(s, "an ");
  return s;
}

}  // namespace

bool KnowledgeGraph::has_node(const std::string& label) const {
  for (const Triple& t : triples_) {
    if (t.subject == label || t.object == label) return true;
  }
  return false;
}

std::vector<std::string> KnowledgeGraph::nodes() const {
  std::set<std::string> all;
  for (const Triple& t : triples_) {
    all.insert(t.subject);
    all.insert(t.object);
  }
  return {all.begin(), all.end()};
}

std::set<std::string> KnowledgeGraph::neighborhood(const std::string& node, int order) const {
  if (!has_node(node)) {
    throw std::invalid_argument("unknown node: " + node);
  }
  auto adj = adjacency(triples_, /*undirected=*/true);
  std::set<std::string> seen{node};
  std::deque<std::pair<std::string, int>> frontier{{node, 0}};
  while (!frontier.empty()) {
    auto [cur, depth] = frontier.front();
    frontier.pop_front();
    if (depth == order) continue;
    for (const auto& next : adj[cur]) {
      if (seen.insert(next).second) frontier.push_back({next, depth + 1});
    }
  }
  return seen;
}

bool KnowledgeGraph::path_exists(const std::string& from, const std::string& to) const {
  if (!has_node(from) || !has_node(to)) return false;
  auto adj = adjacency(triples_, /*undirected=*/false);
  std::set<std::string> seen{from};
  std::deque<std::string> frontier{from};
  while (!frontier.empty()) {
    std::string cur = frontier.front();
    frontier.pop_front();
    if (cur == to) return true;
    for (const auto& next : adj[cur]) {
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return false;
}

std::string KnowledgeGraph::to_text() const {
  std::string out;
  for (const Triple& t : triples_) {
    out += t.subject + "\t" + t.relation + "\t" + t.object + "\n";
  }
  return out;
}

KnowledgeGraph KnowledgeGraph::from_text(const std::string& text) {
  std::set<Triple> triples;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw std::invalid_argument("bad triple line: " + line);
    }
    triples.insert(Triple{line.substr(0, tab1), line.substr(tab1 + 1, tab2 - tab1 - 1),
                          line.substr(tab2 + 1)});
  }
  return KnowledgeGraph(std::move(triples));
}

std::vector<Triple> extract_triples(const Observation& obs) {
  std::vector<Triple> out;
  std::string room;
  for (std::string sentence : split_sentences(obs.text)) {
    std::string s = sentence;
    if (consume_prefix(s, "you are in the ")) {
      room = s;
      out.push_back({"you", "in", room});
      continue;
    }
    s = sentence;
    if (consume_prefix(s, "there is an exit to the ")) {
      if (!room.empty()) out.push_back({room, "has", "exit to " + s});
      continue;
    }
    s = sentence;
    if (consume_prefix(s, "you see ") && consume_suffix(s, " here")) {
      if (!room.empty()) out.push_back({room, "has", strip_article(s)});
      continue;
    }
    s = sentence;
    if (consume_prefix(s, "you are carrying: ")) {
      std::string items = s;
      std::size_t start = 0;
      while (start <= items.size()) {
        std::size_t comma = items.find(", ", start);
        std::string item = items.substr(start, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - start);
        if (!item.empty()) out.push_back({"you", "have", strip_article(item)});
        if (comma == std::string::npos) break;
        start = comma + 2;
      }
      continue;
    }
    // other sentence forms carry no graph information
  }
  return out;
}

KnowledgeGraph update_graph(const KnowledgeGraph& g, const Observation& obs,
                            const std::optional<Action>& last_action) {
  std::set<Triple> next;
  for (const Triple& t : g.triples()) {
    if (t.subject == "you" && t.relation != "have") continue;
    next.insert(t);
  }

  std::string previous_room;
  for (const Triple& t : g.triples()) {
    if (t.subject == "you" && t.relation == "in") {
      previous_room = t.object;
      break;
    }
  }

  std::string current_room;
  for (const Triple& t : extract_triples(obs)) {
    if (t.subject == "you" && t.relation == "in") current_room = t.object;
    next.insert(t);
  }

  if (last_action && last_action->verb == Verb::Go && !previous_room.empty() &&
      !current_room.empty() && current_room != previous_room) {
    next.insert({current_room, direction_name(last_action->dir) + " of", previous_room});
  }

  return KnowledgeGraph(std::move(next));
}

}  // namespace questlab
