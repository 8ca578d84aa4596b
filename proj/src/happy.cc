#include "flipspan/happy.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

namespace flipspan {

namespace {

int OnlyIndex(const ChordSet& s) {
  int out = -1;
  s.ForEach([&](int i) { out = i; });
  return out;
}

FlipKind Coarsest(const FlipSequence& seq) {
  FlipKind k = FlipKind::kSlide;
  for (const FlipStep& s : seq.steps) {
    if (static_cast<int>(s.kind) > static_cast<int>(k)) k = s.kind;
  }
  return k;
}

// Steps between consecutive trees, each claiming the coarser of `claim` and
// its own finest kind.
std::vector<FlipStep> Relabel(const std::vector<Tree>& trees, FlipKind claim) {
  std::vector<FlipStep> steps = StepsBetween(trees, claim);
  Tree t = trees.front();
  for (FlipStep& s : steps) {
    FlipKind finest = ClassifyFlip(t, s.removed, s.added);
    if (!Satisfies(finest, claim)) s.kind = finest;
    t = t.WithSwap(s.removed, s.added);
  }
  return steps;
}

// Vertices of the closed interval a..b in label order.
bool InInterval(int v, int a, int b) { return a <= v && v <= b; }

// Geodesic from -> to through the table's rows for `to`.
std::vector<int> TablePath(const DistanceMatrix& m, int from, int to) {
  const FlipGraph& g = m.graph();
  std::vector<int> path{from};
  int x = from;
  while (x != to) {
    int dx = m.At(x, to);
    int next = -1;
    for (int w : g.Neighbors(x)) {
      if (m.At(w, to) == dx - 1) {
        next = w;
        break;
      }
    }
    FLIPSPAN_CHECK(next >= 0, "no descending neighbour");
    path.push_back(next);
    x = next;
  }
  return path;
}

FlipSequence SequenceOf(const DistanceMatrix& m, const std::vector<int>& path) {
  std::vector<Tree> trees;
  for (int i : path) trees.push_back(m.graph().TreeAt(i));
  return {trees.front(), StepsBetween(trees, m.graph().kind())};
}

void RequireSymmetric(FlipKind kind) {
  if (kind == FlipKind::kSlide) {
    throw InvalidInput("happy-edge checks need a symmetric flip kind");
  }
}

}  // namespace

ChordSet HappyEdges(const Tree& in, const Tree& tar) { return in.mask() & tar.mask(); }

std::vector<Chord> ParkingEdges(const FlipSequence& seq) {
  Tree end = Apply(seq);
  ChordSet ends = seq.start.mask() | end.mask();
  std::set<Chord> out;
  for (const FlipStep& s : seq.steps) {
    int i = ChordTable::For(seq.start.n()).Index(s.added);
    if (!ends.Test(i)) out.insert(s.added);
  }
  return {out.begin(), out.end()};
}

FlipSequence NormalizeRemoveReadd(const FlipSequence& seq, const Chord& e) {
  std::vector<Tree> trees = Trajectory(seq);
  const int k = seq.size();
  int first = -1, back = -1;
  for (int i = 0; i < k && back < 0; ++i) {
    if (first < 0 && seq.steps[i].removed == e) first = i;
    if (first >= 0 && seq.steps[i].added == e) back = i;
  }
  if (first < 0 || back < 0) {
    throw PreconditionViolated(ToString(e) + " is not removed and re-added");
  }
  for (int i = first; i <= back; ++i) {
    if (Crosses(e, seq.steps[i].added)) {
      throw PreconditionViolated("step " + std::to_string(i + 1) + " adds " +
                                 ToString(seq.steps[i].added) + " crossing " +
                                 ToString(e));
    }
  }

  // trees[first] and trees[back + 1] hold e, the ones between do not. Each
  // of those gets e back and loses the first edge of the closed cycle that
  // the original sequence removes.
  std::vector<Tree> out(trees.begin(), trees.begin() + first + 1);
  for (int i = first + 1; i <= back; ++i) {
    std::vector<int> cycle = trees[i].Path(e.a, e.b);
    std::set<Chord> on_cycle;
    for (std::size_t c = 0; c + 1 < cycle.size(); ++c) {
      on_cycle.insert(Chord(cycle[c], cycle[c + 1]));
    }
    std::optional<Chord> f;
    for (int s = i; s <= back && !f; ++s) {
      if (on_cycle.count(seq.steps[s].removed)) f = seq.steps[s].removed;
    }
    FLIPSPAN_CHECK(f.has_value(), "cycle edge never removed");
    out.push_back(trees[i].WithSwap(*f, e));
  }
  FLIPSPAN_CHECK(out.back() == trees[back + 1], "normalized detour misses its end");
  out.insert(out.end(), trees.begin() + back + 2, trees.end());

  FlipKind claim = Coarsest(seq);
  FlipSequence res{seq.start, Relabel(out, claim)};
  if (Satisfies(claim, FlipKind::kCompatible)) {
    for (const FlipStep& s : res.steps) {
      FLIPSPAN_CHECK(Satisfies(s.kind, FlipKind::kCompatible),
                     "normalization lost compatibility");
    }
  }
  Apply(res);
  FLIPSPAN_CHECK(res.size() < k, "normalization did not shorten");
  return res;
}

namespace {

int DropStep(const FlipSequence& seq, int add_step) {
  int drop_step = add_step + 1;
  while (seq.steps[drop_step].removed != seq.steps[add_step].added) ++drop_step;
  return drop_step;
}

// Hull edges joining the two components of t minus `cut`.
std::vector<Chord> BridgingHullEdges(const Tree& t, const Chord& cut) {
  const int n = t.n();
  VertexMask comp = t.Component(cut.a, cut);
  std::vector<Chord> out;
  for (int v = 1; v <= n; ++v) {
    int w = v == n ? 1 : v + 1;
    if (((comp >> v) & 1U) != ((comp >> w) & 1U)) out.push_back(Chord(v, w));
  }
  return out;
}

// Two compatible steps with the effect of the single step s on t: a detour
// over a hull edge, or else the swap with another edge c of the cycle that
// s.added closes (remove c, add s.added, remove s.removed, add c back).
// Edges in `protect` are never used as c.
std::optional<std::vector<FlipStep>> SplitStep(const Tree& t, const FlipStep& s,
                                               const ChordSet& protect) {
  for (const Chord& via : BridgingHullEdges(t, s.removed)) {
    if (via != s.removed && via != s.added) {
      return std::vector<FlipStep>{{s.removed, via, FlipKind::kCompatible},
                                   {via, s.added, FlipKind::kCompatible}};
    }
  }
  const ChordTable& table = ChordTable::For(t.n());
  std::vector<int> cycle = t.Path(s.added.a, s.added.b);
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    Chord c(cycle[i], cycle[i + 1]);
    if (c == s.removed || protect.Test(table.Index(c))) continue;
    return std::vector<FlipStep>{{c, s.added, FlipKind::kCompatible},
                                 {s.removed, c, FlipKind::kCompatible}};
  }
  return std::nullopt;
}

// Happy edges that no step removes.
ChordSet KeptHappy(const FlipSequence& seq, const ChordSet& happy) {
  const ChordTable& table = ChordTable::For(seq.start.n());
  ChordSet out = happy;
  for (const FlipStep& s : seq.steps) out.Reset(table.Index(s.removed));
  return out;
}

// Makes seq one step longer without adding non-hull edges, splitting the
// first step that allows it. Kept happy edges stay kept unless no step can
// be split otherwise.
void PadOneStep(FlipSequence& seq, const ChordSet& happy) {
  std::vector<Tree> trees = Trajectory(seq);
  for (const ChordSet& protect : {KeptHappy(seq, happy), ChordSet{}}) {
    for (int i = 0; i < seq.size(); ++i) {
      if (auto two = SplitStep(trees[i], seq.steps[i], protect)) {
        seq.steps.erase(seq.steps.begin() + i);
        seq.steps.insert(seq.steps.begin() + i, two->begin(), two->end());
        return;
      }
    }
  }
  FLIPSPAN_CHECK(false, "no step can be split");
}

// Rewrites the occurrence of a non-hull parking edge that starts at step
// `add_step` (which adds f). Returns the new step list. When the bridging
// hull edge h is the edge that replaces f, removing h would re-add it; that
// void step is dropped and the result is one step shorter. This only
// happens in sequences that are not shortest.
std::vector<FlipStep> ReplaceOccurrence(const FlipSequence& seq, int add_step) {
  std::vector<Tree> trees = Trajectory(seq);
  const FlipStep& adder = seq.steps[add_step];
  const Chord f = adder.added;
  const int drop_step = DropStep(seq, add_step);

  // The tree path between the ends of f before it is added lies in one
  // side; the other side is A.
  const Tree& before = trees[add_step];
  std::vector<int> path = before.Path(f.a, f.b);
  bool path_inside = InInterval(path[1], f.a, f.b);
  auto in_a = [&](const Chord& c) {
    bool inside = InInterval(c.a, f.a, f.b) && InInterval(c.b, f.a, f.b);
    bool outside = !(c.a > f.a && c.a < f.b) && !(c.b > f.a && c.b < f.b);
    return path_inside ? outside : inside;
  };

  std::vector<FlipStep> side_a, side_b;
  for (int s = add_step + 1; s < drop_step; ++s) {
    (in_a(seq.steps[s].added) ? side_a : side_b).push_back(seq.steps[s]);
  }

  // The A side of trees[drop_step] minus f is two subtrees; the hull edge
  // between them inside A bridges the gap.
  const Tree& last = trees[drop_step];
  VertexMask comp = last.Component(f.a, f);
  std::vector<int> a_side;
  if (path_inside) {
    for (int v = f.b; v <= seq.start.n(); ++v) a_side.push_back(v);
    for (int v = 1; v <= f.a; ++v) a_side.push_back(v);
  } else {
    for (int v = f.a; v <= f.b; ++v) a_side.push_back(v);
  }
  std::optional<Chord> h;
  for (std::size_t i = 0; i + 1 < a_side.size(); ++i) {
    int u = a_side[i], v = a_side[i + 1];
    if (((comp >> u) & 1U) != ((comp >> v) & 1U)) {
      FLIPSPAN_CHECK(!h.has_value(), "two bridging hull edges");
      h = Chord(u, v);
    }
  }
  FLIPSPAN_CHECK(h.has_value() && IsHullEdge(*h, seq.start.n()),
                 "no bridging hull edge");

  std::vector<FlipStep> out(seq.steps.begin(), seq.steps.begin() + add_step);
  out.insert(out.end(), side_a.begin(), side_a.end());
  // Trading f for h keeps compatibility but may lose a shared endpoint.
  auto claim = [](FlipKind k) {
    return Satisfies(k, FlipKind::kCompatible) ? FlipKind::kCompatible : k;
  };
  const FlipStep& dropper = seq.steps[drop_step];
  out.push_back({adder.removed, *h, claim(adder.kind)});
  out.insert(out.end(), side_b.begin(), side_b.end());
  if (*h != dropper.added) out.push_back({*h, dropper.added, claim(dropper.kind)});
  out.insert(out.end(), seq.steps.begin() + drop_step + 1, seq.steps.end());
  return out;
}

}  // namespace

FlipSequence NormalizeParking(const FlipSequence& seq, int* padded) {
  {
    Tree t = seq.start;
    for (const FlipStep& s : seq.steps) {
      if (!Satisfies(ClassifyFlip(t, s.removed, s.added), FlipKind::kCompatible)) {
        throw InvalidInput("NormalizeParking needs a compatible sequence");
      }
      t = t.WithSwap(s.removed, s.added);
    }
  }
  const int n = seq.start.n();
  const Tree end = Apply(seq);
  const ChordSet ends = seq.start.mask() | end.mask();
  const ChordTable& table = ChordTable::For(n);
  FlipSequence cur = seq;
  int pads = 0;
  const int limit = seq.size() + 1;
  for (int round = 0;; ++round) {
    FLIPSPAN_CHECK(round <= limit, "parking normalization does not converge");
    int at = -1;
    for (int s = 0; s < cur.size() && at < 0; ++s) {
      int ai = table.Index(cur.steps[s].added);
      if (!ends.Test(ai) && !table.IsHull(ai)) at = s;
    }
    if (at < 0) break;
    cur.steps = ReplaceOccurrence(cur, at);
    if (cur.size() < seq.size()) {
      PadOneStep(cur, seq.start.mask() & end.mask());
      ++pads;
    }
    Tree reached = Apply(cur);
    FLIPSPAN_CHECK(reached == end, "parking normalization changed the end");
  }
  FLIPSPAN_CHECK(cur.size() == seq.size(), "parking normalization changed length");
  if (padded) *padded = pads;
  return cur;
}

int ConstrainedDistance(const Tree& from, const Tree& to, FlipKind kind,
                        const ChordSet& frozen, std::int64_t node_budget) {
  if (Minus(frozen, from.mask()).Any() || Minus(frozen, to.mask()).Any()) return -1;
  std::unordered_map<ChordSet, int, ChordSetHash> dist{{from.mask(), 0}};
  std::deque<ChordSet> q{from.mask()};
  const int n = from.n();
  while (!q.empty()) {
    ChordSet u = q.front();
    q.pop_front();
    int du = dist.at(u);
    if (u == to.mask()) return du;
    ForEachNeighbor(Tree::FromMaskUnchecked(n, u), kind, [&](const ChordSet& w) {
      if (Minus(frozen, w).Any()) return;
      if (dist.try_emplace(w, du + 1).second) q.push_back(w);
    });
    if (static_cast<std::int64_t>(dist.size()) > node_budget) {
      throw BudgetExceeded("constrained BFS exceeded " + std::to_string(node_budget) +
                           " trees");
    }
  }
  return -1;
}

std::string ToString(HappyProperty p) {
  switch (p) {
    case HappyProperty::kWeakHappy:
      return "WeakHappy";
    case HappyProperty::kStrongHappy:
      return "StrongHappy";
    case HappyProperty::kPerfectFlip:
      return "PerfectFlip";
    case HappyProperty::kParkingOnHull:
      return "ParkingOnHull";
  }
  return "?";
}

PropertyVerdict VerifyHappy(const DistanceMatrix& m, HappyProperty property) {
  if (property != HappyProperty::kWeakHappy && property != HappyProperty::kStrongHappy) {
    throw InvalidInput("VerifyHappy checks WeakHappy or StrongHappy");
  }
  const FlipGraph& g = m.graph();
  RequireSymmetric(g.kind());
  PropertyVerdict v{property, g.kind(), g.n(), true, std::nullopt, 0};
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      const ChordSet happy = g.Node(i) & g.Node(j);
      if (i == j || happy.None()) continue;
      ++v.pairs_checked;
      GeodesicSummary s = SummarizeGeodesics(m, i, j);
      bool bad = property == HappyProperty::kStrongHappy
                     ? s.some_geodesic_removes_happy
                     : s.every_geodesic_removes_happy;
      if (!bad) continue;
      PropertyEvidence ev;
      ev.in = g.TreeAt(i);
      ev.tar = g.TreeAt(j);
      ev.distance = s.distance;
      if (property == HappyProperty::kStrongHappy) {
        // First geodesic arc that removes a happy edge, then table paths on
        // either side of it.
        std::vector<int> path;
        for (int u = 0; u < g.size() && path.empty(); ++u) {
          if (!happy.Intersects(g.Node(u))) continue;
          int du = m.At(i, u);
          for (int w : g.Neighbors(u)) {
            if (du + 1 + m.At(w, j) != s.distance) continue;
            if (!Minus(g.Node(u), g.Node(w)).Intersects(happy)) continue;
            path = TablePath(m, i, u);
            std::vector<int> rest = TablePath(m, w, j);
            path.insert(path.end(), rest.begin(), rest.end());
            break;
          }
        }
        ev.witness = SequenceOf(m, path);
      } else {
        ev.other = ConstrainedDistance(ev.in, ev.tar, g.kind(), happy);
      }
      v.holds = false;
      v.evidence = std::move(ev);
      return v;
    }
  }
  return v;
}

PropertyVerdict VerifyHappy(int n, FlipKind kind, HappyProperty property) {
  RequireSymmetric(kind);
  return VerifyHappy(DistanceMatrix::Compute(n, kind), property);
}

PropertyVerdict VerifyStrongHappyCompatible(int n) {
  return VerifyHappy(n, FlipKind::kCompatible, HappyProperty::kStrongHappy);
}

std::vector<FlipStep> PerfectFlips(const Tree& in, const Tree& tar, FlipKind kind) {
  std::vector<FlipStep> out;
  for (const FlipStep& s : LegalFlips(in, kind)) {
    if (!tar.Contains(s.removed) && tar.Contains(s.added)) out.push_back(s);
  }
  return out;
}

PropertyVerdict CheckPerfectFlipProperty(const DistanceMatrix& m) {
  const FlipGraph& g = m.graph();
  RequireSymmetric(g.kind());
  PropertyVerdict v{HappyProperty::kPerfectFlip, g.kind(), g.n(), true, std::nullopt, 0};
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      ++v.pairs_checked;
      const ChordSet& tar = g.Node(j);
      const int d = m.At(i, j);
      for (int w : g.Neighbors(i)) {
        ChordSet gone = Minus(g.Node(i), g.Node(w));
        ChordSet come = Minus(g.Node(w), g.Node(i));
        if (gone.Intersects(tar) || !come.Intersects(tar)) continue;
        if (m.At(w, j) == d - 1) continue;
        PropertyEvidence ev;
        ev.in = g.TreeAt(i);
        ev.tar = g.TreeAt(j);
        ev.distance = d;
        ev.other = m.At(w, j);
        ev.witness = SequenceOf(m, {i, w});
        v.holds = false;
        v.evidence = std::move(ev);
        return v;
      }
    }
  }
  return v;
}

PropertyVerdict CheckPerfectFlipProperty(int n, FlipKind kind) {
  RequireSymmetric(kind);
  return CheckPerfectFlipProperty(DistanceMatrix::Compute(n, kind));
}

std::optional<PropertyVerdict> FindPerfectFlipViolation(FlipKind kind, int max_n) {
  for (int n = kMinPoints; n <= max_n; ++n) {
    PropertyVerdict v = CheckPerfectFlipProperty(n, kind);
    if (!v.holds) return v;
  }
  return std::nullopt;
}

void ReplayEvidence(const PropertyVerdict& v) {
  if (v.holds) return;
  FLIPSPAN_CHECK(v.evidence.has_value(), "counterexample without evidence");
  const PropertyEvidence& ev = *v.evidence;
  const ChordSet happy = HappyEdges(ev.in, ev.tar);
  const int d = Distance(ev.in, ev.tar, v.kind).distance;
  FLIPSPAN_CHECK(d == ev.distance, "distance does not replay");
  switch (v.property) {
    case HappyProperty::kStrongHappy: {
      FLIPSPAN_CHECK(ev.witness.start == ev.in && Apply(ev.witness) == ev.tar,
                     "witness endpoints");
      FLIPSPAN_CHECK(ev.witness.size() == d, "witness is not a geodesic");
      bool removes = false;
      const ChordTable& table = ChordTable::For(ev.in.n());
      for (const FlipStep& s : ev.witness.steps) {
        FLIPSPAN_CHECK(Satisfies(s.kind, v.kind), "witness step kind");
        if (happy.Test(table.Index(s.removed))) removes = true;
      }
      FLIPSPAN_CHECK(removes, "witness keeps every happy edge");
      break;
    }
    case HappyProperty::kWeakHappy: {
      int kept = ConstrainedDistance(ev.in, ev.tar, v.kind, happy);
      FLIPSPAN_CHECK(kept == ev.other, "happy-preserving distance does not replay");
      FLIPSPAN_CHECK(kept < 0 || kept > d, "a geodesic keeps every happy edge");
      break;
    }
    case HappyProperty::kPerfectFlip: {
      FLIPSPAN_CHECK(ev.witness.start == ev.in && ev.witness.size() == 1,
                     "perfect flip witness");
      const FlipStep& s = ev.witness.steps[0];
      FLIPSPAN_CHECK(!ev.tar.Contains(s.removed) && ev.tar.Contains(s.added),
                     "flip is not perfect");
      Tree g1 = Apply(ev.witness);
      int after = Distance(g1, ev.tar, v.kind).distance;
      FLIPSPAN_CHECK(after == ev.other, "distance after the flip does not replay");
      FLIPSPAN_CHECK(after != d - 1, "the perfect flip starts a geodesic");
      break;
    }
    case HappyProperty::kParkingOnHull:
      FLIPSPAN_CHECK(false, "no counterexample form for ParkingOnHull");
  }
}

HierarchyReport CheckHierarchyPremise(const DistanceMatrix& m) {
  const FlipGraph& g = m.graph();
  RequireSymmetric(g.kind());
  HierarchyReport r;
  r.kind = g.kind();
  r.n = g.n();
  // Arcs that remove some edge, grouped by removed chord.
  const ChordTable& table = ChordTable::For(g.n());
  std::vector<std::vector<std::pair<int, int>>> arcs(table.size());
  for (int u = 0; u < g.size(); ++u) {
    for (int w : g.Neighbors(u)) arcs[OnlyIndex(Minus(g.Node(u), g.Node(w)))].push_back({u, w});
  }
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      const ChordSet happy = g.Node(i) & g.Node(j);
      if (i == j || happy.None()) continue;
      int best = std::numeric_limits<int>::max();
      happy.ForEach([&](int e) {
        for (auto [u, w] : arcs[e]) best = std::min(best, m.At(i, u) + 1 + m.At(w, j));
      });
      ++r.pairs;
      int shortening = best - m.At(i, j);
      ++r.histogram[shortening];
      if (shortening >= 2) ++r.at_least_two;
    }
  }
  return r;
}

HierarchyReport CheckHierarchyPremise(int n, FlipKind kind) {
  RequireSymmetric(kind);
  return CheckHierarchyPremise(DistanceMatrix::Compute(n, kind));
}

FlipSequence GreedyPerfectLine(const Tree& in, const Tree& tar, FlipKind kind) {
  FlipSequence out{in, {}};
  Tree t = in;
  for (;;) {
    std::vector<FlipStep> p = PerfectFlips(t, tar, kind);
    if (p.empty()) break;
    out.steps.push_back(p.front());
    t = t.WithSwap(p.front().removed, p.front().added);
  }
  return out;
}

}  // namespace flipspan
