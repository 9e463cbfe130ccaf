#include "convexforest/mp2.hpp"

#include "convexforest/parallel.hpp"
#include "convexforest/parsimony.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace convexforest {

Character CharacterOfMatching(const PhyloTree& tree, const CoreTree& core, const Matching& m) {
  if (!core.derived()) throw DomainError("core tree carries no taxa");
  if (!IsMatching(core, m)) throw DomainError("edge set is not a matching");
  std::vector<char> in_m(core.edge_count(), 0);
  for (EdgeId e : m.edges) in_m[e] = 1;
  std::vector<int> comp(core.node_count(), -1);
  std::vector<std::vector<TaxonId>> blocks;
  for (NodeId start = 0; start < core.node_count(); ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::vector<NodeId> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      const auto& taxa = core.adjacent_taxa(v);
      blocks[id].insert(blocks[id].end(), taxa.begin(), taxa.end());
      for (auto [w, e] : core.neighbors(v))
        if (!in_m[e] && comp[w] < 0) comp[w] = id, stack.push_back(w);
    }
  }
  return Character(std::move(blocks), tree.taxon_count());
}

Mp2Mode ParseMp2Mode(const std::string& name) {
  if (name == "legal") return Mp2Mode::kLegal;
  if (name == "all") return Mp2Mode::kAll;
  if (name == "fully-legal" || name == "fully_legal") return Mp2Mode::kFullyLegal;
  if (name == "brute") return Mp2Mode::kBrute;
  throw DomainError("unknown mp2 mode '" + name + "'");
}

std::string ToString(Mp2Mode mode) {
  switch (mode) {
    case Mp2Mode::kLegal: return "legal";
    case Mp2Mode::kAll: return "all";
    case Mp2Mode::kFullyLegal: return "fully_legal";
    case Mp2Mode::kBrute: return "brute";
  }
  return "?";
}

namespace {

struct Candidate {
  int gap = -1;
  std::vector<TaxonId> red;
  Character witness;
  int score1 = 0, score2 = 0;
};

// Larger gap wins; equal gaps go to the smaller red block.
bool Better(const Candidate& a, const Candidate& b) {
  if (a.gap != b.gap) return a.gap > b.gap;
  return a.red < b.red;
}

Candidate Score(const ParsimonyScorer& s1, const ParsimonyScorer& s2, const Character& f) {
  std::vector<char> red(f.taxon_count(), 0);
  for (TaxonId t : f.block(0)) red[t] = 1;
  Candidate c;
  c.score1 = s1.ScoreBinary(red);
  c.score2 = s2.ScoreBinary(red);
  c.gap = std::abs(c.score1 - c.score2);
  c.red = f.block(0);
  c.witness = f;
  return c;
}

Mp2Result Finish(const Candidate& best, Mp2Mode mode, BigInt examined) {
  Mp2Result r;
  r.distance = best.gap;
  r.witness = best.witness;
  r.score1 = best.score1;
  r.score2 = best.score2;
  r.direction = best.score1 < best.score2 ? "tree1<tree2" : best.score2 < best.score1 ? "tree2<tree1" : "equal";
  r.mode = mode;
  r.matchings_examined = std::move(examined);
  return r;
}

}  // namespace

Mp2Result Mp2Brute(const PhyloTree& t1, const PhyloTree& t2, int taxon_cap) {
  RequireSameTaxa(t1, t2);
  const int n = t1.taxon_count();
  if (n > taxon_cap) throw DomainError("too many taxa for brute force");
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  const ParsimonyScorer s1(u1), s2(u2);
  Candidate best;
  std::vector<int> states(n, 0);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int t = 1; t < n; ++t) states[t] = (mask >> (t - 1)) & 1;
    Candidate c = Score(s1, s2, Character::FromStates(states));
    if (Better(c, best)) best = std::move(c);
  }
  return Finish(best, Mp2Mode::kBrute, BigInt(total));
}

Mp2Result Mp2Distance(const PhyloTree& t1, const PhyloTree& t2, Mp2Mode mode, int jobs) {
  RequireSameTaxa(t1, t2);
  if (mode == Mp2Mode::kBrute || t1.taxon_count() < 4) return Mp2Brute(t1, t2);
  const PhyloTree u1 = Unroot(t1), u2 = Unroot(t2);
  const ParsimonyScorer s1(u1), s2(u2);
  const MatchingKind kind = mode == Mp2Mode::kAll ? MatchingKind::kAll : MatchingKind::kLegal;
  Candidate best;
  BigInt examined = 0;
  for (const PhyloTree* tree : {&u1, &u2}) {
    const CoreTree core = MakeCoreTree(*tree);
    const MatchingIndex index(core, kind);
    const BigInt count = index.Count();
    if (count > BigInt(std::numeric_limits<std::int64_t>::max()))
      throw DomainError("matching space too large");
    const int chunks = std::max(1, jobs);
    std::vector<Candidate> best_of(chunks);
    std::vector<std::uint64_t> scored(chunks, 0);
    ParallelChunks(static_cast<std::uint64_t>(count), jobs,
                   [&](int chunk, std::uint64_t begin, std::uint64_t end) {
                     for (std::uint64_t i = begin; i < end; ++i) {
                       const Matching m = index.Unrank(BigInt(i));
                       if (mode == Mp2Mode::kFullyLegal && !IsKLegal(core, m, std::nullopt)) continue;
                       ++scored[chunk];
                       const Character fc = CharacterOfMatching(*tree, core, m);
                       Candidate c = Score(s1, s2, TwoStateFromCovering(*tree, fc));
                       if (Better(c, best_of[chunk])) best_of[chunk] = std::move(c);
                     }
                   });
    for (int c = 0; c < chunks; ++c) {
      examined += scored[c];
      if (Better(best_of[c], best)) best = std::move(best_of[c]);
    }
  }
  return Finish(best, mode, examined);
}

}  // namespace convexforest
