#include "convexforest/agreement.hpp"
#include "convexforest/generators.hpp"
#include "convexforest/oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace convexforest;
using testing::ParseCharacter;

TEST_SUITE("agreement") {

TEST_CASE("quartet pair") {
  const PhyloTree a = ParseNewick("((a,b),(c,d));", NewickMode::kUnrooted);
  const PhyloTree b = ParseNewick("((a,c),(b,d));", NewickMode::kUnrooted);
  CHECK(MafEnumerate(a, b).size == 2);
  CHECK(MafEnumerate(a, a).size == 1);
  CHECK(IsAgreementForest(a, b, ParseCharacter(a, "a|bcd")).valid);
  const AgreementForest bad = IsAgreementForest(a, b, ParseCharacter(a, "abcd"));
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.reason.empty());
  // ab and cd agree as pairs but their paths overlap in b.
  CHECK_FALSE(IsAgreementForest(a, b, ParseCharacter(a, "ab|cd")).valid);
}

TEST_CASE("forest test agrees with the split oracle on every partition") {
  for (int i = 0; i < 4; ++i) {
    const PhyloTree a = RandomTree(6, 10 + i), b = RandomTree(6, 20 + i);
    oracle::ForEachPartition(6, [&](const Character& p) {
      CHECK(IsAgreementForest(a, b, p).valid == oracle::IsAgreementForestBySplits(a, b, p));
    });
  }
}

TEST_CASE("rooted forest test agrees with the cluster oracle on every partition") {
  for (int i = 0; i < 4; ++i) {
    const PhyloTree a = RandomRootedTree(5, 30 + i), b = RandomRootedTree(5, 40 + i);
    oracle::ForEachPartition(6, [&](const Character& p) {
      CHECK(IsRootedAgreementForest(a, b, p).valid == oracle::IsRootedAgreementForestByClusters(a, b, p));
    });
  }
}

TEST_CASE("augmentation") {
  const PhyloTree r = ParseNewick("((a,b),c);", NewickMode::kRooted);
  const PhyloTree aug = AugmentRooted(r);
  CHECK_FALSE(aug.rooted());
  CHECK(aug.taxon_count() == 4);
  CHECK(aug.taxa().back() == kRootTaxon);
  CHECK_THROWS_AS(AugmentRooted(ParseNewick("(a,b,c);", NewickMode::kAuto)), DomainError);
}

TEST_CASE("rooted triples") {
  const PhyloTree a = ParseNewick("((a,b),c);", NewickMode::kRooted);
  const PhyloTree b = ParseNewick("((a,c),b);", NewickMode::kRooted);
  CHECK(Rmaf(a, b, RmafMode::kEnumerate, kRootedTippingPoint).forest.size == 2);
  CHECK(Rmaf(a, a, RmafMode::kHybrid, kRootedTippingPoint).forest.size == 1);
  // Unrooted, all three-taxon trees agree.
  CHECK(MafEnumerate(Unroot(a), Unroot(b)).size == 1);
}

TEST_CASE("hybrid, enumeration and brute force agree") {
  for (int i = 0; i < 12; ++i) {
    const int n = 4 + i % 4;
    const PhyloTree a = RandomTree(n, 100 + i), b = RandomTree(n, 200 + i);
    const int want = oracle::BruteMafSize(a, b);
    const AgreementForest e = MafEnumerate(a, b);
    CHECK(e.size == want);
    CHECK(e.valid);
    CHECK(oracle::IsAgreementForestBySplits(a, b, e.partition));
    for (double c : {0.1, 0.5, kUnrootedTippingPoint, 1.0}) {
      const HybridResult h = MafHybrid(a, b, c);
      CHECK(h.forest.size == want);
      CHECK(h.k_tried <= static_cast<int>(std::ceil(c * n)));
    }
  }
}

TEST_CASE("rooted hybrid and enumeration agree with brute force") {
  for (int i = 0; i < 10; ++i) {
    const int n = 3 + i % 4;
    const PhyloTree a = RandomRootedTree(n, 300 + i), b = RandomRootedTree(n, 400 + i);
    const int want = oracle::BruteRootedMafSize(a, b);
    CHECK(Rmaf(a, b, RmafMode::kEnumerate, kRootedTippingPoint).forest.size == want);
    const HybridResult h = Rmaf(a, b, RmafMode::kHybrid, kRootedTippingPoint);
    CHECK(h.forest.size == want);
    CHECK(oracle::IsRootedAgreementForestByClusters(a, b, h.forest.partition));
  }
}

TEST_CASE("baseline oracle decides exactly the feasible k") {
  for (int i = 0; i < 8; ++i) {
    const PhyloTree a = RandomTree(6, 500 + i), b = RandomTree(6, 600 + i);
    const int want = oracle::BruteMafSize(a, b);
    for (int k = 1; k <= 6; ++k) {
      const auto forest = FptBaseline(a, b, k);
      CHECK(forest.has_value() == (k >= want));
      if (forest) CHECK(forest->size <= k);
    }
  }
}

TEST_CASE("hybrid with a custom oracle") {
  const PhyloTree a = RandomTree(7, 700), b = RandomTree(7, 701);
  int calls = 0;
  const FptOracle counting = [&](int k) {
    ++calls;
    return FptBaseline(a, b, k);
  };
  const HybridResult h = MafHybrid(a, b, counting, 1.0);
  CHECK(h.mode_used == "oracle");
  CHECK(h.forest.size == oracle::BruteMafSize(a, b));
  CHECK(calls == h.k_tried);

  const FptOracle never = [](int) { return std::optional<AgreementForest>{}; };
  const HybridResult e = MafHybrid(a, b, never, 0.3);
  CHECK(e.mode_used == "enumeration");
  CHECK(e.forest.size == oracle::BruteMafSize(a, b));
  CHECK_THROWS_AS(MafHybrid(a, b, 0.0), DomainError);
  CHECK_THROWS_AS(MafHybrid(a, b, 1.5), DomainError);
}

TEST_CASE("tipping points") {
  CHECK(Entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(Entropy(0.0) == 0.0);
  const TippingPoint u = SolveTippingPoint(3);
  CHECK(std::abs(u.c - 0.7571) <= 5e-4);
  CHECK(std::abs(u.runtime_base - 2.2973) <= 1e-3);
  const TippingPoint r = SolveTippingPoint(2.42);
  CHECK(std::abs(r.c - 0.8204) <= 5e-4);
  CHECK(std::abs(r.runtime_base - 2.0649) <= 1e-3);
  CHECK(SolveTippingPoint(1).c == doctest::Approx(1.0));
  // A slower oracle hands over to enumeration sooner: c decreases as the
  // base grows.
  double previous = 1.0;
  for (double base = 1.5; base <= 6.0; base += 0.5) {
    const TippingPoint t = SolveTippingPoint(base);
    CHECK(t.c <= previous + 1e-12);
    CHECK(t.c > 0);
    // At the balance point both costs coincide.
    CHECK(t.runtime_base == doctest::Approx(std::pow(base, t.c)).epsilon(1e-9));
    previous = t.c;
  }
  CHECK_THROWS_AS(SolveTippingPoint(0.5), DomainError);
}

}
