#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "questlab/engine.hpp"

namespace questlab {

struct Triple {
  std::string subject;
  std::string relation;
  std::string object;

  auto operator<=>(const Triple&) const = default;
};

/// The agent's belief state: a set of (subject, relation, object) facts.
/// Immutable value; update_graph returns a new graph.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(std::set<Triple> triples) : triples_(std::move(triples)) {}

  const std::set<Triple>& triples() const { return triples_; }
  bool empty() const { return triples_.empty(); }
  std::size_t size() const { return triples_.size(); }
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  bool has_node(const std::string& label) const;

  /// All node labels (subjects and objects), sorted.
  std::vector<std::string> nodes() const;

  /// Nodes within `order` hops of `node`, edges treated as undirected,
  /// including the node itself. Throws if the node is absent.
  std::set<std::string> neighborhood(const std::string& node, int order = 3) const;

  /// Directed reachability over triple edges. Missing nodes give false.
  bool path_exists(const std::string& from, const std::string& to) const;

  /// Line-oriented dump: subject<TAB>relation<TAB>object, sorted.
  std::string to_text() const;
  static KnowledgeGraph from_text(const std::string& text);

  bool operator==(const KnowledgeGraph&) const = default;

 private:
  std::set<Triple> triples_;
};

/// Deterministic pattern extraction over the engine's observation grammar.
/// Recognized sentence forms:
///   "You are in the X."            -> <you, in, X>, and binds X as the room
///   "There is an exit to the D."   -> <room, has, exit to D>
///   "You see a/an X here."         -> <room, has, X>
///   "You are carrying: a X, ..."   -> <you, have, X> per item
/// Anything else yields no triples.
std::vector<Triple> extract_triples(const Observation& obs);

/// Applies the per-action update rules:
///  1. drop all "you" edges except "have";
///  2. merge the extracted triples;
///  3. after a successful move A -> B, add <B, dir of, A>;
///  4. everything else persists.
KnowledgeGraph update_graph(const KnowledgeGraph& g, const Observation& obs,
                            const std::optional<Action>& last_action);

}  // namespace questlab
