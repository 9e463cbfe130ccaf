#pragma once

#include "convexforest/core_tree.hpp"

#include <array>
#include <optional>
#include <vector>

namespace convexforest {

// Sorted ids of pairwise non-adjacent core edges.
struct Matching {
  std::vector<EdgeId> edges;
  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;
};

// [a0, a1, b0, b1, e]: legal matchings of a rooted subtree split by how they
// meet its root, plus the empty-tree indicator.
using MatchVector = std::array<BigInt, 5>;

inline MatchVector EmptyTreeVector() { return {0, 0, 0, 0, 1}; }

// The bilinear combination of the two root branches' vectors.
MatchVector CombineBranches(const MatchVector& l, const MatchVector& r);

// The DP root: the leaf (degree <= 1) with the smallest id.
NodeId DefaultCoreRoot(const CoreTree& core);

// Per-node vectors of the core rooted at `root`, which must be a leaf.
// Children are taken in increasing node id: the first is the left branch.
std::vector<MatchVector> MatchVectors(const CoreTree& core, NodeId root);

enum class MatchingKind { kAll, kLegal };

// Counting and unranking of all or legal matchings. The canonical order is
// the summand order of the recursion with the negative terms of a0 expanded
// away: classes a0, a1, b0, b1 (or uncovered, covered for kAll); within a
// class the branch-class pairs in the order listed in matchings.cpp; within
// a pair, left index major.
class MatchingIndex {
 public:
  MatchingIndex(const CoreTree& core, MatchingKind kind);

  MatchingKind kind() const { return kind_; }
  NodeId root() const { return root_; }
  BigInt Count() const;
  Matching Unrank(const BigInt& index) const;

 private:
  struct Summand {
    int left, right;  // branch classes; `empty_class_` marks an empty branch
    int matched;      // 0 none, 1 left root edge, 2 right root edge
  };

  const std::vector<BigInt>& Counts(NodeId v) const;
  void UnrankInto(NodeId u, int cls, BigInt index, std::vector<EdgeId>& out) const;

  const CoreTree* core_;
  MatchingKind kind_;
  NodeId root_;
  int empty_class_;
  std::vector<std::vector<Summand>> summands_;  // per class
  std::vector<NodeId> left_, right_;            // kNoNode when absent
  std::vector<EdgeId> left_edge_, right_edge_;
  std::vector<std::vector<BigInt>> counts_;     // per node, per class (empty class = 0)
  std::vector<BigInt> empty_counts_;
};

BigInt CountMatchings(const CoreTree& core, MatchingKind kind);

// Every matching, in lexicographic order of sorted edge lists. Throws
// DomainError when the core has more than `edge_cap` edges.
std::vector<Matching> BruteForceMatchings(const CoreTree& core, int edge_cap = 22);

bool IsMatching(const CoreTree& core, const Matching& m);

struct LegalityComponent {
  std::vector<NodeId> nodes;
  int s = 0;       // vertex count
  int m = 0;       // incident matching edges
  int weight = 0;  // sum of 3 - deg; always s - m + 2
};

struct LegalityReport {
  std::vector<LegalityComponent> components;
  std::optional<int> k;  // nullopt = every k
  bool legal = true;
};

// k-legal: every component of core - M with at most k vertices has
// s > 2m - 2. k = 2 is plain legality; nullopt asks for all k at once.
LegalityReport Legality(const CoreTree& core, const Matching& m, std::optional<int> k);
bool IsKLegal(const CoreTree& core, const Matching& m, std::optional<int> k);

BigInt CountKLegalBrute(const CoreTree& core, std::optional<int> k, int edge_cap = 22);
inline BigInt CountFullyLegalBrute(const CoreTree& core, int edge_cap = 22) {
  return CountKLegalBrute(core, std::nullopt, edge_cap);
}

}  // namespace convexforest
