#pragma once

#include "convexforest/character.hpp"
#include "convexforest/phylo_tree.hpp"

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

using namespace convexforest;

inline constexpr const char* kSevenTaxa = "(((a,b),c),d,(e,(f,g)));";

// "ab|cd|efg" with single-letter labels.
inline Character ParseCharacter(const PhyloTree& tree, const std::string& text) {
  std::vector<std::vector<TaxonId>> blocks(1);
  for (char ch : text) {
    if (ch == '|') {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(tree.FindTaxon(std::string(1, ch)));
    }
  }
  return Character(blocks, tree.taxon_count());
}

inline Character RandomCharacter(int n, int max_states, std::mt19937_64& rng) {
  std::vector<int> states(n);
  for (int& s : states) s = static_cast<int>(rng() % max_states);
  return Character::FromStates(states);
}

inline std::set<std::string> Render(const PhyloTree& tree, const std::vector<Character>& cs) {
  std::set<std::string> out;
  for (const Character& c : cs) out.insert(c.ToString(tree.taxa()));
  return out;
}

}  // namespace testing
