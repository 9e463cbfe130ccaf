#include "convexforest/character.hpp"

#include <algorithm>
#include <map>

namespace convexforest {

Character::Character(std::vector<std::vector<TaxonId>> blocks, int taxon_count)
    : taxon_count_(taxon_count) {
  std::vector<char> seen(taxon_count, 0);
  for (auto& b : blocks) {
    if (b.empty()) throw DomainError("character has an empty block");
    std::sort(b.begin(), b.end());
    for (TaxonId t : b) {
      if (t < 0 || t >= taxon_count) throw DomainError("character taxon out of range");
      if (seen[t]) throw DomainError("character blocks are not disjoint");
      seen[t] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw DomainError("character blocks do not cover all taxa");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  blocks_ = std::move(blocks);
}

Character Character::FromStates(std::span<const int> states) {
  std::map<int, std::vector<TaxonId>> by_state;
  for (std::size_t t = 0; t < states.size(); ++t)
    by_state[states[t]].push_back(static_cast<TaxonId>(t));
  std::vector<std::vector<TaxonId>> blocks;
  for (auto& [s, b] : by_state) blocks.push_back(std::move(b));
  return Character(std::move(blocks), static_cast<int>(states.size()));
}

Character Character::SingleBlock(int taxon_count) {
  std::vector<TaxonId> all(taxon_count);
  for (int t = 0; t < taxon_count; ++t) all[t] = t;
  return Character({std::move(all)}, taxon_count);
}

Character Character::Singletons(int taxon_count) {
  std::vector<std::vector<TaxonId>> blocks;
  for (int t = 0; t < taxon_count; ++t) blocks.push_back({t});
  return Character(std::move(blocks), taxon_count);
}

std::vector<int> Character::StateOf() const {
  std::vector<int> state(taxon_count_, -1);
  for (int i = 0; i < block_count(); ++i)
    for (TaxonId t : blocks_[i]) state[t] = i;
  return state;
}

std::string Character::ToString(std::span<const std::string> labels) const {
  bool compact = std::all_of(labels.begin(), labels.end(),
                             [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (int i = 0; i < block_count(); ++i) {
    if (i) out += '|';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j && !compact) out += ',';
      out += labels[blocks_[i][j]];
    }
  }
  return out;
}

}  // namespace convexforest
