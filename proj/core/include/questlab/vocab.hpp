#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace questlab {

/// Word tables for the "home" theme grammar. Fixed constants: every world,
/// observation and action string is built from these plus nothing else.
namespace words {
const std::vector<std::string>& rooms();
const std::vector<std::string>& portable_adjectives();
const std::vector<std::string>& portable_nouns();
const std::vector<std::string>& container_adjectives();
const std::vector<std::string>& container_nouns();
const std::vector<std::string>& scenery_adjectives();
const std::vector<std::string>& scenery_nouns();
const std::vector<std::string>& directions();
const std::vector<std::string>& grammar();
}  // namespace words

/// Token <-> id table over the full fixed grammar. Shared by all worlds of
/// all sizes, so encoder weights can transfer across games.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;

  /// The global vocabulary (union of all word tables). Built once.
  static const Vocab& global();

  explicit Vocab(const std::vector<std::string>& tokens);

  int id(const std::string& token) const;
  const std::string& token(int id) const { return tokens_[id]; }
  int size() const { return static_cast<int>(tokens_.size()); }

  std::vector<int> encode(const std::vector<std::string>& tokens) const;
  std::vector<int> encode_text(const std::string& text) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace questlab
