#pragma once

#include "convexforest/character.hpp"
#include "convexforest/phylo_tree.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace convexforest {

// Bottom-up phase of Fitch's algorithm. `rooted` is the tree the phase ran
// on: the input itself when rooted, otherwise the input subdivided on one
// edge (the extra root has id input.node_count()).
struct FitchResult {
  int score = 0;
  PhyloTree rooted;
  int input_nodes = 0;
  // Sorted state ids F(u) per node of `rooted`.
  std::vector<std::vector<int>> state_sets;
  Character character;
};

// Unrooted input is rooted on the pendant edge of taxon 0, or on
// `root_edge` when given. Throws DomainError if the taxa do not match.
FitchResult FitchBottomUp(const PhyloTree& tree, const Character& f,
                          std::optional<EdgeId> root_edge = std::nullopt);

// Total assignment node -> state id over the input tree's nodes.
struct Extension {
  std::vector<int> assignment;
};

enum class ChoicePolicy { kFirst, kSeeded };

// Top-down phase. kFirst takes the smallest admissible state at every free
// choice; kSeeded chooses uniformly with the given seed.
Extension FitchTopDown(const FitchResult& fitch, ChoicePolicy policy = ChoicePolicy::kFirst,
                       std::uint64_t seed = 0);

// Number of bichromatic edges of a total assignment.
int ExtensionLength(const PhyloTree& tree, const Extension& ext);
std::vector<EdgeId> MutationEdges(const PhyloTree& tree, const Extension& ext);

int ParsimonyScore(const PhyloTree& tree, const Character& f);
bool IsConvex(const PhyloTree& tree, const Character& f);

struct PartialExtension {
  std::vector<int> assignment;  // -1 where uncovered
  std::vector<char> covered;
  bool covering = false;
};

// Each state on the minimal subtree spanning its taxa. Throws DomainError
// if f is not convex on the tree.
PartialExtension NaturalPartialExtension(const PhyloTree& tree, const Character& f);

// Recolours a covering convex character with two states by properly
// 2-colouring its component graph. The block containing taxon 0 is red and
// comes first. A single-block input is returned unchanged.
Character TwoStateFromCovering(const PhyloTree& tree, const Character& fc);

// Fast repeated scoring on one fixed tree (bitset Fitch, up to 64 states).
class ParsimonyScorer {
 public:
  explicit ParsimonyScorer(const PhyloTree& tree);
  int Score(const Character& f) const;
  // Two-state score; red[t] selects the state of taxon t.
  int ScoreBinary(const std::vector<char>& red) const;

 private:
  const PhyloTree* tree_;
  std::vector<NodeId> postorder_;  // internal nodes of the rooted view, children first
  std::vector<std::vector<NodeId>> children_;
  NodeId root_ = kNoNode;
  NodeId top_leaf_ = kNoNode;  // unrooted: taxon-0 leaf acting as parent of root_
};

}  // namespace convexforest
