#include "flipspan/sweeps.h"

#include <algorithm>

#include "flipspan/compat_bound.h"
#include "flipspan/happy.h"
#include "flipspan/linrep.h"
#include "flipspan/random_trees.h"
#include "flipspan/rot_bound.h"

namespace flipspan {

namespace {

std::string Pair(const Tree& a, const Tree& b) {
  return ToString(a) + " -> " + ToString(b);
}

void CompatibleCase(const Tree& in, const Tree& tar, SweepResult& r) {
  ++r.checked;
  try {
    CompatibleReport rep;
    FlipSequence s = CompatibleSequence(in, tar, &rep);
    FlipSequence claimed = s;
    for (FlipStep& st : claimed.steps) st.kind = FlipKind::kCompatible;
    if (Apply(claimed) != tar) return r.Fail(Pair(in, tar) + ": wrong end");
    if (!rep.params.Admits(s.size())) {
      r.Fail(Pair(in, tar) + ": length " + std::to_string(s.size()) + " > " +
             rep.params.BoundString());
    }
  } catch (const std::exception& e) {
    r.Fail(Pair(in, tar) + ": " + e.what());
  }
}

void RotationCase(const Tree& in, const Tree& tar, SweepResult& r) {
  ++r.checked;
  try {
    RotationReport rep;
    FlipSequence s = RotationSequence(in, tar, &rep);
    const int n = in.n();
    int best = std::max({rep.count_l, rep.count_r, rep.count_d, rep.count_j});
    if (Apply(s) != tar) return r.Fail(Pair(in, tar) + ": wrong end");
    for (const FlipStep& st : s.steps) {
      if (st.kind != FlipKind::kRotation) return r.Fail(Pair(in, tar) + ": non-rotation step");
    }
    if (s.size() > 2 * (n - 1) - best) {
      r.Fail(Pair(in, tar) + ": length " + std::to_string(s.size()) + " > " +
             std::to_string(2 * (n - 1) - best));
    }
  } catch (const std::exception& e) {
    r.Fail(Pair(in, tar) + ": " + e.what());
  }
}

template <typename F>
SweepResult Exhaustive(const char* name, int n, F&& f) {
  SweepResult r;
  r.check = name;
  r.n = n;
  std::vector<Tree> trees = AllTrees(n);
  for (const Tree& a : trees) {
    for (const Tree& b : trees) f(a, b, r);
  }
  return r;
}

template <typename F>
SweepResult Random(const char* name, int n, int count, std::uint64_t seed, F&& f) {
  SweepResult r;
  r.check = name;
  r.n = n;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    Tree a = RandomTree(n, rng);
    Tree b = RandomTree(n, rng);
    f(a, b, r);
  }
  return r;
}

}  // namespace

SweepResult CheckGapBijection(int n) {
  SweepResult r;
  r.check = "gap-bijection";
  r.n = n;
  for (const Tree& t : AllTrees(n)) {
    ++r.checked;
    std::vector<Chord> rho = GapBijection(t);
    bool covers = static_cast<int>(rho.size()) == n - 1;
    for (int g = 1; covers && g < n; ++g) covers = CoversGap(rho[g - 1], g);
    std::sort(rho.begin(), rho.end());
    if (!covers || rho != t.Edges()) r.Fail(ToString(t));
  }
  return r;
}

SweepResult CheckShortWideCounts(int n) {
  SweepResult r;
  r.check = "short-wide";
  r.n = n;
  for (const Tree& t : AllTrees(n)) {
    ++r.checked;
    try {
      SnwClasses c = ClassifySnw(t);
      const int s = static_cast<int>(c.shorts.size());
      const int w = static_cast<int>(c.wides.size());
      if (s < c.uncovered || w > s - c.uncovered) r.Fail(ToString(t));
    } catch (const InvariantViolation& e) {
      r.Fail(ToString(t) + ": " + e.what());
    }
  }
  return r;
}

SweepResult CheckCompatibleBound(int n) {
  return Exhaustive("compatible-bound", n, CompatibleCase);
}
SweepResult CheckCompatibleBound(int n, int count, std::uint64_t seed) {
  return Random("compatible-bound", n, count, seed, CompatibleCase);
}
SweepResult CheckRotationBound(int n) {
  return Exhaustive("rotation-bound", n, RotationCase);
}
SweepResult CheckRotationBound(int n, int count, std::uint64_t seed) {
  return Random("rotation-bound", n, count, seed, RotationCase);
}

SweepResult CheckParkingNormalization(int count, int max_n, std::uint64_t seed) {
  SweepResult r;
  r.check = "parking";
  r.n = max_n;
  Rng rng(seed);
  std::uniform_int_distribution<int> pick_n(4, max_n), pick_len(1, 12);
  for (int i = 0; i < count; ++i) {
    Tree start = RandomTree(pick_n(rng), rng);
    FlipSequence seq = RandomWalk(start, FlipKind::kCompatible, pick_len(rng), rng);
    ++r.checked;
    try {
      FlipSequence out = NormalizeParking(seq);
      for (FlipStep& st : out.steps) st.kind = FlipKind::kCompatible;
      Tree end = Apply(out);  // validates every step as compatible
      if (out.size() != seq.size() || !(out.start == seq.start) || end != Apply(seq)) {
        r.Fail("length or endpoints changed from " + ToString(start));
        continue;
      }
      for (const Chord& c : ParkingEdges(out)) {
        if (!IsHullEdge(c, start.n())) {
          r.Fail("non-hull parking edge " + ToString(c) + " from " + ToString(start));
          break;
        }
      }
    } catch (const std::exception& e) {
      r.Fail(ToString(start) + ": " + e.what());
    }
  }
  return r;
}

}  // namespace flipspan
