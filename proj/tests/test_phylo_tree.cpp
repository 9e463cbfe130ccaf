#include "convexforest/generators.hpp"
#include "convexforest/oracles.hpp"
#include "convexforest/phylo_tree.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace convexforest;

TEST_SUITE("phylo_tree") {

TEST_CASE("quartet parses and serialises canonically") {
  const PhyloTree t = ParseNewick("(a,b,(c,d));", NewickMode::kAuto);
  CHECK_FALSE(t.rooted());
  CHECK(t.taxon_count() == 4);
  CHECK(t.node_count() == 6);
  CHECK(t.edge_count() == 5);
  CHECK(SerializeNewick(t) == "((a,b),(c,d));");
  // Same topology written differently.
  CHECK(SerializeNewick(ParseNewick("((d,c),(b,a));", NewickMode::kUnrooted)) == "((a,b),(c,d));");
  CHECK(SerializeNewick(ParseNewick("(c,(a,b),d);", NewickMode::kAuto)) == "((a,b),(c,d));");
}

TEST_CASE("auto mode follows the arity of the top node") {
  CHECK(ParseNewick("((a,b),(c,d));", NewickMode::kAuto).rooted());
  CHECK_FALSE(ParseNewick("((a,b),(c,d));", NewickMode::kUnrooted).rooted());
  CHECK_FALSE(ParseNewick("(a,b,(c,d));", NewickMode::kAuto).rooted());
  const PhyloTree r = ParseNewick("((a,b),(c,d));", NewickMode::kRooted);
  CHECK(r.degree(r.root()) == 2);
  CHECK(r.node_count() == 7);
  CHECK(Unroot(r).node_count() == 6);
}

TEST_CASE("two taxa") {
  const PhyloTree t = ParseNewick("(a,b);", NewickMode::kUnrooted);
  CHECK(t.taxon_count() == 2);
  CHECK(SerializeNewick(t) == "(a,b);");
}

TEST_CASE("branch lengths and internal labels are ignored") {
  const PhyloTree t = ParseNewick("(a:1.0,b:2,(c:0.5,d:1e-3)x:0.1);", NewickMode::kAuto);
  CHECK(SerializeNewick(t) == "((a,b),(c,d));");
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(ParseNewick("((a,b),c", NewickMode::kAuto), ParseError);
  CHECK_THROWS_AS(ParseNewick("((a,b),c,d)", NewickMode::kAuto), ParseError);
  CHECK_THROWS_AS(ParseNewick("((a,b),c));", NewickMode::kAuto), ParseError);
  CHECK_THROWS_AS(ParseNewick("(a,b,c,d);", NewickMode::kAuto), DomainError);
  CHECK_THROWS_AS(ParseNewick("(a,a,b);", NewickMode::kAuto), DomainError);
  CHECK_THROWS_AS(ParseNewick("(a);", NewickMode::kAuto), DomainError);
  try {
    ParseNewick("((a,b),c", NewickMode::kAuto);
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("serialisation round-trips random trees") {
  for (int i = 0; i < 40; ++i) {
    const PhyloTree t = RandomTree(4 + i % 12, i);
    const std::string s = SerializeNewick(t);
    const PhyloTree back = ParseNewick(s, NewickMode::kUnrooted);
    CHECK(SerializeNewick(back) == s);
    CHECK(oracle::SameUnrootedTopology(t, back));
  }
}

TEST_CASE("restriction") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  const std::vector<std::string> abfg{"a", "b", "f", "g"}, acdg{"a", "c", "d", "g"};
  CHECK(SerializeNewick(Restrict(t, abfg)) == "((a,b),(f,g));");
  CHECK(SerializeNewick(Restrict(t, acdg)) == "((a,c),(d,g));");

  const PhyloTree r = ParseNewick("((a,b),(c,d));", NewickMode::kRooted);
  const std::vector<std::string> acd{"a", "c", "d"};
  const PhyloTree rr = Restrict(r, acd);
  CHECK(rr.rooted());
  CHECK(SerializeNewick(rr) == "(a,(c,d));");
}

TEST_CASE("restriction agrees with split projection") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const int n = 5 + i % 8;
    const PhyloTree t = RandomTree(n, 100 + i);
    std::vector<char> mask(n, 0);
    int picked = 0;
    for (int x = 0; x < n; ++x) picked += mask[x] = rng() % 2;
    if (picked < 4) continue;
    const PhyloTree sub = Restrict(t, mask);
    // Project the splits of t onto the subset by label.
    std::set<std::set<std::string>> want, got;
    auto add = [](std::set<std::set<std::string>>& out, const std::set<std::string>& side,
                  const std::set<std::string>& all) {
      if (side.size() < 2 || side.size() + 2 > all.size()) return;
      std::set<std::string> other;
      for (const auto& x : all)
        if (!side.count(x)) other.insert(x);
      out.insert(side.count(*all.begin()) ? other : side);
    };
    std::set<std::string> all;
    for (int x = 0; x < n; ++x)
      if (mask[x]) all.insert(t.taxa()[x]);
    for (std::uint64_t s : oracle::Splits(t)) {
      std::set<std::string> side;
      for (int x = 0; x < n; ++x)
        if (mask[x] && (s >> x & 1)) side.insert(t.taxa()[x]);
      add(want, side, all);
    }
    for (std::uint64_t s : oracle::Splits(sub)) {
      std::set<std::string> side;
      for (int x = 0; x < sub.taxon_count(); ++x)
        if (s >> x & 1) side.insert(sub.taxa()[x]);
      add(got, side, all);
    }
    CHECK(got == want);
  }
}

TEST_CASE("spanning nodes agree with the separation oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const int n = 3 + i % 10;
    const PhyloTree t = RandomTree(n, 200 + i);
    std::vector<char> mask(n, 0);
    std::vector<TaxonId> taxa;
    for (int x = 0; x < n; ++x)
      if (rng() % 2) {
        mask[x] = 1;
        taxa.push_back(x);
      }
    if (taxa.empty()) continue;
    CHECK(SpanningNodes(t, mask) == oracle::SpanBySeparation(t, taxa));
  }
}

TEST_CASE("rooting by subdivision") {
  const PhyloTree t = ParseNewick(testing::kSevenTaxa, NewickMode::kAuto);
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const PhyloTree r = RootBySubdivision(t, e);
    CHECK(r.rooted());
    CHECK(r.root() == t.node_count());
    CHECK(r.node_count() == t.node_count() + 1);
    CHECK(SerializeNewick(Unroot(r)) == SerializeNewick(t));
  }
}

TEST_CASE("generators") {
  CHECK(DefaultLabels(3) == std::vector<std::string>{"a", "b", "c"});
  CHECK(DefaultLabels(30)[0] == "t01");
  CHECK(SerializeNewick(Caterpillar(5)) == SerializeNewick(ParseNewick("((a,b),(c,(d,e)));", NewickMode::kAuto)));
  CHECK(RandomRootedTree(9, 3).rooted());
  CHECK(SerializeNewick(RandomTree(10, 5)) == SerializeNewick(RandomTree(10, 5)));
  CHECK(ParseFamily("lower-bound") == Family::kLowerBound);
  CHECK_THROWS_AS(ParseFamily("bogus"), DomainError);
}

}
