#include "flipspan/linrep.h"

#include "doctest.h"
#include "flipspan/oracle.h"

namespace flipspan {
namespace {

Tree T(int n, std::vector<Chord> edges) { return Tree::FromEdges(n, edges); }

TEST_CASE("gap bijection examples") {
  auto rho = GapBijection(Tree::HullPath(5));
  for (int g = 1; g < 5; ++g) CHECK(rho[g - 1] == Chord(g, g + 1));

  Tree star = Tree::Star(4, 1);
  rho = GapBijection(star);
  CHECK(rho[0] == Chord(1, 2));
  CHECK(rho[1] == Chord(1, 3));
  CHECK(rho[2] == Chord(1, 4));
  SnwClasses s = ClassifySnw(star);
  CHECK(s.shorts == std::vector<Chord>{Chord(1, 2)});
  CHECK(s.nears.size() == 2);
  CHECK(s.wides.empty());
  CHECK(s.uncovered == 1);

  s = ClassifySnw(Tree::HullPath(6));
  CHECK(s.shorts.size() == 5);
  CHECK(s.uncovered == 5);
}

TEST_CASE("bijection and short/wide counting for every tree") {
  for (int n = 3; n <= 7; ++n) {
    for (const Tree& t : AllTrees(n)) {
      auto rho = GapBijection(t);
      std::vector<Chord> sorted = rho;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == t.Edges());
      SnwClasses s = ClassifySnw(t);
      CHECK(static_cast<int>(s.shorts.size() + s.nears.size() + s.wides.size()) ==
            n - 1);
    }
  }
}

TEST_CASE("common hull gap relabeling") {
  Tree path = Tree::HullPath(5);
  CHECK(RelabelForCommonHullGap(path, path) == 0);
  Tree in = T(4, {{1, 2}, {2, 3}, {2, 4}});
  Tree tar = T(4, {{1, 2}, {2, 3}, {1, 4}});
  auto shift = RelabelForCommonHullGap(in, tar);
  REQUIRE(shift.has_value());
  CHECK(Relabel(Chord(3, 4), 4, *shift) == Chord(1, 4));
  Tree back = Relabel(Relabel(in, *shift), UndoShift(4, *shift));
  CHECK(back == in);
  CHECK_FALSE(RelabelForCommonHullGap(
                  T(4, {{1, 2}, {2, 3}, {3, 4}}), T(4, {{1, 2}, {2, 3}, {1, 4}}))
                  .has_value());
}

TEST_CASE("pairing examples") {
  auto pairs = PairGapwise(Tree::HullPath(4), Tree::Star(4, 1));
  CHECK(pairs[0].pair_class == PairClass::kEqual);
  CHECK(pairs[1].pair_class == PairClass::kRest);
  CHECK(pairs[1].e == Chord(2, 3));
  CHECK(pairs[1].e_tar == Chord(1, 3));
  CHECK(pairs[2].pair_class == PairClass::kRest);

  // Gap 2 with e=(2,4), e'=(1,3): both near, sharing different gap vertices.
  pairs = PairGapwise(T(4, {{1, 2}, {2, 4}, {3, 4}}), T(4, {{1, 2}, {1, 3}, {3, 4}}));
  CHECK(pairs[1].pair_class == PairClass::kCrossing);
  CHECK(DumpPairingTsv(pairs).find("2\t(2,4)\tnear\t(1,3)\tnear\tC") !=
        std::string::npos);

  for (const GapPair& p : PairGapwise(Tree::Star(5, 2), Tree::Star(5, 2)))
    CHECK(p.pair_class == PairClass::kEqual);
}

TEST_CASE("conflict graph examples") {
  ConflictGraph single({{Chord(2, 4), Chord(1, 3), Chord(2, 3)}},
                       ConflictMode::kCrossingOnly);
  CHECK(single.TopologicalOrder() == std::vector<int>{0});

  // e'_2 = (3,6) crosses e_1 = (1,4): edge 0 -> 1 only.
  std::vector<ConflictNode> nodes = {{Chord(1, 4), Chord(1, 3), Chord(3, 4)},
                                     {Chord(5, 7), Chord(3, 6), Chord(5, 6)}};
  ConflictGraph g(nodes, ConflictMode::kCrossingOnly);
  CHECK(g.HasEdge(0, 1));
  CHECK_FALSE(g.HasEdge(1, 0));
  CHECK(g.TopologicalOrder() == std::vector<int>{0, 1});

  ConflictGraph cyc({{Chord(1, 3), Chord(4, 6), Chord(2, 3)},
                     {Chord(2, 5), Chord(2, 4), Chord(3, 4)}},
                    ConflictMode::kCrossingOnly);
  CHECK_THROWS_AS(cyc.TopologicalOrder(), CycleDetected);
}

// Every ordered pair at n <= 6 with a common hull gap: A/B/C are acyclic and
// C always has a topmost root. Without happy diagonals P_eq is exactly the
// happy hull edges.
TEST_CASE("pair classes over all tree pairs") {
  for (int n = 4; n <= 6; ++n) {
    auto trees = AllTrees(n);
    for (const Tree& a : trees) {
      for (const Tree& b : trees) {
        auto shift = RelabelForCommonHullGap(a, b);
        if (!shift) continue;
        Tree in = Relabel(a, *shift), tar = Relabel(b, *shift);
        auto pairs = PairGapwise(in, tar);
        std::vector<ConflictNode> by_class[5];
        int eq = 0;
        bool happy_diagonal = false;
        for (const Chord& c : in.Edges())
          if (tar.Contains(c) && !IsHullEdge(c, n)) happy_diagonal = true;
        for (const GapPair& p : pairs) {
          by_class[static_cast<int>(p.pair_class)].push_back(ToConflictNode(p));
          if (p.pair_class == PairClass::kEqual) {
            ++eq;
            if (!happy_diagonal) CHECK(IsHullEdge(p.e, n));
          }
        }
        int happy_hull = 0;
        for (const Chord& c : in.Edges())
          if (tar.Contains(c) && IsHullEdge(c, n)) ++happy_hull;
        if (!happy_diagonal) CHECK(eq == happy_hull);
        for (PairClass pc : {PairClass::kAbove, PairClass::kBelow}) {
          ConflictGraph g(by_class[static_cast<int>(pc)], ConflictMode::kFull);
          CHECK_NOTHROW(g.TopologicalOrder());
        }
        auto& c = by_class[static_cast<int>(PairClass::kCrossing)];
        ConflictGraph hc(c, ConflictMode::kCrossingOnly);
        CHECK_NOTHROW(hc.TopologicalOrder());
        std::vector<bool> alive(c.size(), true);
        for (std::size_t round = 0; round < c.size(); ++round) {
          auto r = TopmostRoot(c, alive);
          REQUIRE(r.has_value());
          for (std::size_t j = 0; j < c.size(); ++j)
            if (alive[j] && static_cast<int>(j) != *r)
              CHECK_FALSE(Conflicts(c[j], c[*r], ConflictMode::kCrossingOnly));
          alive[*r] = false;
        }
      }
    }
  }
}

}  // namespace
}  // namespace flipspan
