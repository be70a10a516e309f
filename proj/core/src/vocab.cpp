#include "questlab/vocab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "questlab/text.hpp"

namespace questlab {
namespace words {

const std::vector<std::string>& rooms() {
  static const std::vector<std::string> v = {
      "basement", "chamber",  "kitchen",  "bedroom", "attic",    "pantry",
      "cellar",   "study",    "library",  "washroom", "hallway", "lounge",
      "parlor",   "nursery",  "closet",   "garage",  "workshop", "laundry",
      "balcony",  "garden",   "foyer",    "den",     "office",   "sunroom",
  };
  return v;
}

const std::vector<std::string>& portable_adjectives() {
  static const std::vector<std::string> v = {
      "cubical", "rusty",  "brass", "crimson", "silver", "golden",
      "copper",  "ivory",  "shiny", "amber",   "jade",   "carved",
      "pale",    "iron",   "glass", "ancient", "dusty",  "small",
  };
  return v;
}

const std::vector<std::string>& portable_nouns() {
  static const std::vector<std::string> v = {
      "key",    "gem",    "coin",   "lamp",   "book",   "bottle",
      "candle", "mirror", "scroll", "ring",   "goblet", "feather",
  };
  return v;
}

const std::vector<std::string>& container_adjectives() {
  static const std::vector<std::string> v = {
      "oak", "wooden", "heavy", "marble", "ebony", "steel", "velvet", "painted",
  };
  return v;
}

const std::vector<std::string>& container_nouns() {
  static const std::vector<std::string> v = {
      "chest", "box", "cabinet", "case", "trunk", "basket", "crate", "safe",
  };
  return v;
}

const std::vector<std::string>& scenery_adjectives() {
  static const std::vector<std::string> v = {
      "bed", "coat", "wall", "stone", "wicker", "corner",
  };
  return v;
}

const std::vector<std::string>& scenery_nouns() {
  static const std::vector<std::string> v = {
      "stand", "shelf", "table", "bench", "rack", "stool",
  };
  return v;
}

const std::vector<std::string>& directions() {
  static const std::vector<std::string> v = {"north", "south", "east", "west"};
  return v;
}

const std::vector<std::string>& grammar() {
  static const std::vector<std::string> v = {
      // verbs
      "go", "look", "inventory", "take", "drop", "open", "examine", "insert",
      "unlock",
      // prepositions / templates
      "into", "with", "to", "the", "a", "an",
      // observation sentences
      "you", "are", "in", "there", "is", "exit", "see", "here", "it",
      "locked", "closed", "carrying", "nothing", "can't", "do", "that",
      "have", "completed", "quest", "special", "about",
  };
  return v;
}

}  // namespace words

Vocab::Vocab(const std::vector<std::string>& tokens) {
  tokens_.reserve(tokens.size() + 2);
  tokens_.push_back("<pad>");
  tokens_.push_back("<unk>");
  for (const auto& t : tokens) {
    if (index_.count(t)) continue;
    index_[t] = static_cast<int>(tokens_.size());
    tokens_.push_back(t);
  }
}

const Vocab& Vocab::global() {
  static const Vocab v = [] {
    std::set<std::string> all;
    for (auto list : {&words::rooms(), &words::portable_adjectives(),
                      &words::portable_nouns(), &words::container_adjectives(),
                      &words::container_nouns(), &words::scenery_adjectives(),
                      &words::scenery_nouns(), &words::directions(),
                      &words::grammar()}) {
      all.insert(list->begin(), list->end());
    }
    return Vocab(std::vector<std::string>(all.begin(), all.end()));
  }();
  return v;
}

int Vocab::id(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> Vocab::encode(const std::vector<std::string>& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

std::vector<int> Vocab::encode_text(const std::string& text) const {
  return encode(tokenize(text));
}

}  // namespace questlab
