#include "flipspan/oracle.h"

#include <map>
#include <queue>

#include "doctest.h"

namespace flipspan {
namespace {

const FlipKind kKinds[] = {FlipKind::kSlide, FlipKind::kRotation,
                           FlipKind::kCompatible, FlipKind::kUnrestricted};

TEST_CASE("flip graphs are connected; only slides are asymmetric") {
  for (int n = 3; n <= 6; ++n) {
    for (FlipKind k : kKinds) {
      FlipGraph g = FlipGraph::Build(n, k);
      CHECK(g.size() == CountTrees(n));
      CHECK(g.IsConnected());
      if (k != FlipKind::kSlide) CHECK(g.IsSymmetric());
    }
  }
}

TEST_CASE("per-pair distance matches the table") {
  for (FlipKind k : kKinds) {
    DistanceMatrix m = DistanceMatrix::Compute(5, k);
    const FlipGraph& g = m.graph();
    for (int i = 0; i < g.size(); i += 3) {
      for (int j = 0; j < g.size(); j += 2) {
        DistanceReport r = Distance(g.TreeAt(i), g.TreeAt(j), k);
        CHECK(r.distance == m.At(i, j));
        CHECK(r.witness.size() == r.distance);
        CHECK(Apply(r.witness) == g.TreeAt(j));
      }
    }
  }
}

TEST_CASE("small known distances") {
  Tree in = Tree::FromEdges(4, {{1, 2}, {2, 4}, {3, 4}});
  Tree tar = Tree::FromEdges(4, {{1, 2}, {1, 3}, {3, 4}});
  CHECK(Distance(in, tar, FlipKind::kUnrestricted).distance == 1);
  CHECK(Distance(in, tar, FlipKind::kCompatible).distance == 2);
  CHECK_THROWS_AS(Distance(Tree::HullPath(7), Tree::Star(7, 4),
                           FlipKind::kUnrestricted, 10),
                  BudgetExceeded);
}

TEST_CASE("all geodesics against path counting") {
  DistanceMatrix m = DistanceMatrix::Compute(5, FlipKind::kCompatible);
  const FlipGraph& g = m.graph();
  for (int i = 0; i < g.size(); i += 7) {
    for (int j = 0; j < g.size(); j += 5) {
      auto seqs = AllGeodesics(g.TreeAt(i), g.TreeAt(j), FlipKind::kCompatible);
      GeodesicSummary s = SummarizeGeodesics(m, i, j);
      CHECK(seqs.size() == s.geodesic_count);
      bool some = false, every = true;
      ChordSet happy = g.Node(i) & g.Node(j);
      for (const FlipSequence& q : seqs) {
        CHECK(q.size() == m.At(i, j));
        CHECK(Apply(q) == g.TreeAt(j));
        bool removes = false;
        for (const FlipStep& st : q.steps) {
          int idx = ChordTable::For(5).Index(st.removed);
          if (happy.Test(idx)) removes = true;
        }
        some = some || removes;
        every = every && removes;
      }
      CHECK(s.some_geodesic_removes_happy == some);
      CHECK(s.every_geodesic_removes_happy == every);
    }
  }
  CHECK_THROWS_AS(AllGeodesics(Tree::HullPath(6), Tree::Star(6, 4),
                               FlipKind::kUnrestricted, 1),
                  BudgetExceeded);
}

TEST_CASE("radius is n-2 for symmetric kinds") {
  for (int n = 4; n <= 6; ++n) {
    for (FlipKind k : {FlipKind::kRotation, FlipKind::kCompatible,
                       FlipKind::kUnrestricted}) {
      CHECK(ComputeDiameterRadius(n, k).radius == n - 2);
    }
  }
}

TEST_CASE("dot export") {
  std::string dot = ToDot(FlipGraph::Build(3, FlipKind::kUnrestricted));
  CHECK(dot.find("graph flip_3_unrestricted") == 0);
  CHECK(dot.find(" -- ") != std::string::npos);
  CHECK(ToDot(FlipGraph::Build(4, FlipKind::kSlide)).find(" -> ") !=
        std::string::npos);
}

}  // namespace
}  // namespace flipspan
