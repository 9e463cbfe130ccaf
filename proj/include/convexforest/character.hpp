#pragma once

#include "convexforest/common.hpp"

#include <span>
#include <string>
#include <vector>

namespace convexforest {

// A partition of the taxa {0, ..., n-1} into states. Taxon ids follow the
// sorted order of taxon labels, so "smallest taxon" means smallest label.
//
// Blocks are kept canonical: each block sorted ascending, blocks ordered by
// their smallest taxon. Two characters are equal iff they induce the same
// partition.
class Character {
 public:
  Character() = default;
  // Throws DomainError unless `blocks` partition {0, ..., taxon_count-1}.
  Character(std::vector<std::vector<TaxonId>> blocks, int taxon_count);

  // states[t] is an arbitrary state label for taxon t.
  static Character FromStates(std::span<const int> states);
  static Character SingleBlock(int taxon_count);
  static Character Singletons(int taxon_count);

  int taxon_count() const { return taxon_count_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<TaxonId>>& blocks() const { return blocks_; }
  const std::vector<TaxonId>& block(int i) const { return blocks_[i]; }
  // Block index of every taxon.
  std::vector<int> StateOf() const;

  // Renders blocks with labels, e.g. "ab|cd|efg" style with '|' separators
  // and ',' between multi-character labels.
  std::string ToString(std::span<const std::string> labels) const;

  friend bool operator==(const Character&, const Character&) = default;
  // Lexicographic on the canonical block lists.
  friend bool operator<(const Character& a, const Character& b) {
    return a.blocks_ < b.blocks_;
  }

 private:
  std::vector<std::vector<TaxonId>> blocks_;
  int taxon_count_ = 0;
};

}  // namespace convexforest
