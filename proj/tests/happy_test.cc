#include "flipspan/happy.h"

#include <set>

#include "doctest.h"
#include "flipspan/json_io.h"
#include "flipspan/random_trees.h"

namespace flipspan {
namespace {

Tree T(int n, std::vector<Chord> edges) { return Tree::FromEdges(n, edges); }

FlipSequence Seq(const Tree& start, FlipKind kind,
                 std::vector<std::pair<Chord, Chord>> steps) {
  FlipSequence s{start, {}};
  for (auto [r, a] : steps) s.steps.push_back({r, a, kind});
  Apply(s);
  return s;
}

bool AllCompatible(const FlipSequence& s) {
  Tree t = s.start;
  for (const FlipStep& st : s.steps) {
    if (!Satisfies(ClassifyFlip(t, st.removed, st.added), FlipKind::kCompatible)) {
      return false;
    }
    t = t.WithSwap(st.removed, st.added);
  }
  return true;
}

// Happy edges the sequence never removes.
std::set<Chord> KeptHappy(const FlipSequence& s) {
  Tree end = Apply(s);
  std::set<Chord> out;
  for (const Chord& c : s.start.Edges()) {
    if (end.Contains(c)) out.insert(c);
  }
  for (const FlipStep& st : s.steps) out.erase(st.removed);
  return out;
}

TEST_CASE("remove-readd: two cancelling steps") {
  Tree path = Tree::HullPath(4);
  FlipSequence s = Seq(path, FlipKind::kCompatible,
                       {{{1, 2}, {1, 3}}, {{1, 3}, {1, 2}}});
  FlipSequence out = NormalizeRemoveReadd(s, Chord(1, 2));
  CHECK(out.size() == 0);
  CHECK(out.start == path);
}

// Smallest compatible 4-step detour on 5 points that removes the hull edge
// (1,2) first, adds it back last, and normalizes to two steps.
TEST_CASE("remove-readd: four-step detour on five points") {
  const Chord e(1, 2);
  const FlipKind c = FlipKind::kCompatible;
  std::optional<FlipSequence> found;
  for (const Tree& t0 : AllTrees(5)) {
    if (!t0.Contains(e) || found) continue;
    for (const FlipStep& s1 : LegalFlips(t0, c)) {
      if (s1.removed != e || found) continue;
      Tree t1 = t0.WithSwap(s1.removed, s1.added);
      for (const FlipStep& s2 : LegalFlips(t1, c)) {
        if (found) break;
        Tree t2 = t1.WithSwap(s2.removed, s2.added);
        if (t2.Contains(e)) continue;
        for (const FlipStep& s3 : LegalFlips(t2, c)) {
          if (found) break;
          Tree t3 = t2.WithSwap(s3.removed, s3.added);
          if (t3.Contains(e)) continue;
          for (const FlipStep& s4 : LegalFlips(t3, c)) {
            if (s4.added != e) continue;
            FlipSequence s{t0, {s1, s2, s3, s4}};
            if (NormalizeRemoveReadd(s, e).size() == 2) {
              found = s;
              break;
            }
          }
        }
      }
    }
  }
  REQUIRE(found.has_value());
  FlipSequence out = NormalizeRemoveReadd(*found, e);
  CHECK(out.start == found->start);
  CHECK(Apply(out) == Apply(*found));
  CHECK(AllCompatible(out));
  for (const FlipStep& st : out.steps) CHECK(st.removed != e);
}

TEST_CASE("remove-readd: preconditions") {
  Tree t = T(4, {{1, 2}, {1, 3}, {3, 4}});
  FlipSequence s = Seq(t, FlipKind::kUnrestricted, {{{1, 3}, {2, 4}}, {{2, 4}, {1, 3}}});
  CHECK_THROWS_AS(NormalizeRemoveReadd(s, Chord(1, 3)), PreconditionViolated);
  CHECK_THROWS_AS(NormalizeRemoveReadd(s, Chord(1, 2)), PreconditionViolated);
}

TEST_CASE("remove-readd on random compatible walks") {
  Rng rng(11);
  int applied = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    FlipSequence s = RandomWalk(RandomTree(n, rng), FlipKind::kCompatible, 8, rng);
    for (const Chord& e : s.start.Edges()) {
      try {
        FlipSequence out = NormalizeRemoveReadd(s, e);
        ++applied;
        CHECK(out.size() < s.size());
        CHECK(Apply(out) == Apply(s));
        CHECK(AllCompatible(out));
      } catch (const PreconditionViolated&) {
      }
    }
  }
  MESSAGE("remove-readd applied " << applied << " times");
  CHECK(applied > 100);
}

TEST_CASE("parking: examples") {
  // No parking edge.
  Tree path = Tree::HullPath(5);
  FlipSequence plain = Seq(path, FlipKind::kCompatible, {{{4, 5}, {1, 5}}});
  CHECK(ParkingEdges(plain).empty());
  CHECK(NormalizeParking(plain).steps == plain.steps);

  // (1,4) parks while (5,6) -> (4,6) happens on its far side.
  FlipSequence s = Seq(Tree::HullPath(6), FlipKind::kCompatible,
                       {{{2, 3}, {1, 4}}, {{5, 6}, {4, 6}}, {{1, 4}, {2, 3}}});
  CHECK(ParkingEdges(s) == std::vector<Chord>{Chord(1, 4)});
  FlipSequence out = NormalizeParking(s);
  CHECK(out.size() == 3);
  CHECK(Apply(out) == Apply(s));
  CHECK(AllCompatible(out));
  CHECK(ParkingEdges(out) == std::vector<Chord>{Chord(1, 6)});
  CHECK(out.steps[0] == FlipStep{{5, 6}, {4, 6}, FlipKind::kCompatible});
  CHECK(NormalizeParking(out).steps == out.steps);

  FlipSequence crossing = Seq(T(4, {{1, 2}, {1, 3}, {3, 4}}), FlipKind::kUnrestricted,
                              {{{1, 3}, {2, 4}}});
  CHECK_THROWS_AS(NormalizeParking(crossing), InvalidInput);
}

TEST_CASE("parking: random compatible walks") {
  Rng rng(5);
  int rewritten = 0, padded_runs = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    int len = 1 + static_cast<int>(rng() % 12);
    FlipSequence s = RandomWalk(RandomTree(n, rng), FlipKind::kCompatible, len, rng);
    int padded = 0;
    FlipSequence out = NormalizeParking(s, &padded);
    if (!(out.steps == s.steps)) ++rewritten;
    if (padded > 0) ++padded_runs;
    CHECK(out.size() == s.size());
    CHECK(out.start == s.start);
    CHECK(Apply(out) == Apply(s));
    CHECK(AllCompatible(out));
    for (const Chord& c : ParkingEdges(out)) CHECK(IsHullEdge(c, n));
    if (padded == 0) CHECK(KeptHappy(out) == KeptHappy(s));
    CHECK(NormalizeParking(out).steps == out.steps);
  }
  MESSAGE("parking: " << rewritten << " rewritten, " << padded_runs << " padded");
  CHECK(rewritten > 100);
}

// Geodesics are where the construction comes from: there it never
// collapses and never touches a kept happy edge.
TEST_CASE("parking: random compatible geodesics") {
  Rng rng(17);
  int rewritten = 0;
  for (int n = 5; n <= 7; ++n) {
    DistanceMatrix m = DistanceMatrix::Compute(n, FlipKind::kCompatible);
    const FlipGraph& g = m.graph();
    for (int trial = 0; trial < 700; ++trial) {
      int from = static_cast<int>(rng() % g.size()), to = static_cast<int>(rng() % g.size());
      // Random descent through the geodesic DAG.
      std::vector<Tree> trees{g.TreeAt(from)};
      for (int x = from; x != to;) {
        std::vector<int> next;
        for (int w : g.Neighbors(x)) {
          if (m.At(w, to) == m.At(x, to) - 1) next.push_back(w);
        }
        x = next[rng() % next.size()];
        trees.push_back(g.TreeAt(x));
      }
      FlipSequence s{trees.front(), StepsBetween(trees, FlipKind::kCompatible)};
      int padded = -1;
      FlipSequence out = NormalizeParking(s, &padded);
      CHECK(padded == 0);
      if (!(out.steps == s.steps)) ++rewritten;
      CHECK(Apply(out) == g.TreeAt(to));
      CHECK(out.size() == m.At(from, to));
      for (const Chord& c : ParkingEdges(out)) CHECK(IsHullEdge(c, n));
      CHECK(KeptHappy(out) == KeptHappy(s));
    }
  }
  MESSAGE("parking on geodesics: " << rewritten << " rewritten");
  CHECK(rewritten > 0);
}

TEST_CASE("strong happy property under compatible flips") {
  for (int n = 3; n <= 6; ++n) {
    PropertyVerdict v = VerifyStrongHappyCompatible(n);
    CHECK(v.holds);
    CHECK(v.pairs_checked > 0);
  }
}

TEST_CASE("happy counterexamples under rotations replay") {
  PropertyVerdict strong = VerifyHappy(3, FlipKind::kRotation, HappyProperty::kStrongHappy);
  CHECK(strong.holds);
  strong = VerifyHappy(4, FlipKind::kRotation, HappyProperty::kStrongHappy);
  REQUIRE_FALSE(strong.holds);
  ReplayEvidence(strong);
  CHECK(VerdictFromJson(VerdictToJson(strong)).evidence->witness.steps ==
        strong.evidence->witness.steps);

  for (int n = 3; n <= 5; ++n) {
    CHECK(VerifyHappy(n, FlipKind::kRotation, HappyProperty::kWeakHappy).holds);
  }
  PropertyVerdict weak = VerifyHappy(6, FlipKind::kRotation, HappyProperty::kWeakHappy);
  REQUIRE_FALSE(weak.holds);
  ReplayEvidence(weak);
  CHECK(weak.evidence->distance == 3);
  CHECK(weak.evidence->other == 4);

  // A tampered report must not replay.
  PropertyVerdict bad = weak;
  bad.evidence->other = 3;
  CHECK_THROWS_AS(ReplayEvidence(bad), InvariantViolation);
}

TEST_CASE("fig11 fixture") {
  Json j = ReadJsonFile(std::string(FLIPSPAN_FIXTURES) + "/fig11.json");
  Tree in = TreeFromJson(j["in"]), tar = TreeFromJson(j["tar"]);
  int d = Distance(in, tar, FlipKind::kRotation).distance;
  int kept = ConstrainedDistance(in, tar, FlipKind::kRotation, HappyEdges(in, tar));
  CHECK(d == j["rotation_distance"].get<int>());
  CHECK(d == 3);
  CHECK(kept >= 4);
  CHECK(kept == j["happy_preserving_min"].get<int>());
  // Inside each half the unhappy edge needs two rotations.
  for (auto [x, y] : {std::pair{Chord(1, 2), Chord(3, 4)}, std::pair{Chord(4, 5), Chord(1, 6)}}) {
    CHECK(in.Contains(x));
    CHECK(tar.Contains(y));
    CHECK_FALSE(x.Has(y.a));
    CHECK_FALSE(x.Has(y.b));
  }
  // The minimal weak-happy violation found by search is this instance.
  auto v = FindHappyViolation(6, FlipKind::kRotation);
  REQUIRE(v.has_value());
  CHECK(v->first == in);
  CHECK(v->second == tar);
}

TEST_CASE("perfect flip property") {
  for (FlipKind k : {FlipKind::kUnrestricted, FlipKind::kCompatible, FlipKind::kRotation}) {
    CHECK(CheckPerfectFlipProperty(3, k).holds);
  }
  auto c = FindPerfectFlipViolation(FlipKind::kCompatible, 6);
  REQUIRE(c.has_value());
  CHECK(c->n == 4);
  ReplayEvidence(*c);
  auto u = FindPerfectFlipViolation(FlipKind::kUnrestricted, 6);
  REQUIRE(u.has_value());
  CHECK(u->n == 6);
  ReplayEvidence(*u);
  CHECK(u->evidence->other >= u->evidence->distance);

  Tree in = T(4, {{1, 2}, {1, 3}, {1, 4}}), tar = T(4, {{1, 2}, {2, 4}, {3, 4}});
  auto p = PerfectFlips(in, tar, FlipKind::kCompatible);
  CHECK(p.size() == 2);
}

TEST_CASE("fig6 fixture") {
  Json j = ReadJsonFile(std::string(FLIPSPAN_FIXTURES) + "/fig6.json");
  Tree in = TreeFromJson(j["in"]), tar = TreeFromJson(j["tar"]);
  FlipSequence line = SequenceFromJson(j["greedy_line"]);
  REQUIRE(line.start == in);
  Tree t = in;
  for (const FlipStep& s : line.steps) {
    CHECK_FALSE(tar.Contains(s.removed));
    CHECK(tar.Contains(s.added));
    CHECK(Satisfies(ClassifyFlip(t, s.removed, s.added), FlipKind::kCompatible));
    t = t.WithSwap(s.removed, s.added);
  }
  const Tree star = t;
  CHECK(PerfectFlips(star, tar, FlipKind::kUnrestricted).empty());
  auto extra = Minus(star.mask(), tar.mask());
  CHECK(extra.Count() == 2);
  const ChordTable& table = ChordTable::For(in.n());
  extra.ForEach([&](int e) { CHECK((table.Crossing(e) & tar.mask()).Count() == 2); });

  for (FlipKind k : {FlipKind::kUnrestricted, FlipKind::kCompatible}) {
    std::string name = ToString(k);
    int rest = Distance(star, tar, k).distance;
    int best = Distance(in, tar, k).distance;
    CHECK(rest == j["remaining"][name].get<int>());
    CHECK(best == j["distance"][name].get<int>());
    CHECK(line.size() + rest > best);
  }
  CHECK(Distance(star, tar, FlipKind::kUnrestricted).distance == 3);
  CHECK(Distance(star, tar, FlipKind::kCompatible).distance == 4);
}

TEST_CASE("hierarchy premise distribution") {
  for (int n = 3; n <= 5; ++n) {
    HierarchyReport c = CheckHierarchyPremise(n, FlipKind::kCompatible);
    CHECK(c.pairs > 0);
    CHECK(c.histogram.begin()->first >= 1);
    if (n == 5) CHECK(c.histogram.count(1) == 1);
  }
  HierarchyReport r = CheckHierarchyPremise(5, FlipKind::kRotation);
  CHECK(r.histogram.count(0) == 1);
  CHECK(r.histogram.at(0) > 0);
}

TEST_CASE("greedy perfect line stops with no perfect flip") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Tree a = RandomTree(7, rng), b = RandomTree(7, rng);
    for (FlipKind k : {FlipKind::kUnrestricted, FlipKind::kCompatible}) {
      FlipSequence line = GreedyPerfectLine(a, b, k);
      Tree end = Apply(line);
      CHECK(PerfectFlips(end, b, k).empty());
      CHECK((end.mask() & b.mask()).Count() ==
            (a.mask() & b.mask()).Count() + line.size());
    }
  }
}

}  // namespace
}  // namespace flipspan
