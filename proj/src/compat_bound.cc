#include "flipspan/compat_bound.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace flipspan {

namespace {

// Applies compatible flips one at a time, validating each.
class Builder {
 public:
  explicit Builder(const Tree& start) : cur_(start), seq_{start, {}} {}

  void Flip(const Chord& removed, const Chord& added) {
    FlipKind k{};
    try {
      k = ClassifyFlip(cur_, removed, added);
    } catch (const FlipError& e) {
      throw InvalidStep(seq_.size() + 1, e.defect(), e.what());
    }
    if (!Satisfies(k, FlipKind::kCompatible)) {
      throw InvalidStep(seq_.size() + 1, FlipDefect::kKindMismatch,
                        ToString(removed) + " -> " + ToString(added) +
                            " is not compatible");
    }
    seq_.steps.push_back({removed, added, FlipKind::kCompatible});
    cur_ = cur_.WithSwap(removed, added);
  }

  const Tree& current() const { return cur_; }
  const FlipSequence& sequence() const { return seq_; }

 private:
  Tree cur_;
  FlipSequence seq_;
};

void SortLongestFirst(std::vector<GapPair>* pairs, bool by_target) {
  std::stable_sort(pairs->begin(), pairs->end(),
                   [&](const GapPair& x, const GapPair& y) {
                     const Chord& a = by_target ? x.e_tar : x.e;
                     const Chord& b = by_target ? y.e_tar : y.e;
                     return a.Length() > b.Length();
                   });
}

// Flips the chosen side of every pair to its gap, longest first. Short
// edges already are their gap and are skipped.
void FlipToGaps(Builder* builder, std::vector<GapPair> pairs, bool from_target) {
  SortLongestFirst(&pairs, from_target);
  for (const GapPair& p : pairs) {
    const Chord& e = from_target ? p.e_tar : p.e;
    if (e == p.GapChord()) continue;
    builder->Flip(e, p.GapChord());
  }
}

Chord MapChord(const Chord& c, const std::vector<int>& labels) {
  return Chord(labels[c.a - 1], labels[c.b - 1]);
}

FlipSequence Relabeled(const FlipSequence& seq, int shift) {
  FlipSequence out{Relabel(seq.start, shift), {}};
  for (const FlipStep& s : seq.steps) {
    out.steps.push_back({Relabel(s.removed, seq.start.n(), shift),
                         Relabel(s.added, seq.start.n(), shift), s.kind});
  }
  return out;
}

}  // namespace

std::string BoundParams::BoundString() const {
  int num = TripleBound();
  int g = std::gcd(std::abs(num), 3);
  if (g == 3) return std::to_string(num / 3);
  return std::to_string(num) + "/3";
}

BoundParams ComputeBoundParams(const Tree& in, const Tree& tar) {
  if (in.n() != tar.n()) throw InvalidInput("trees on different point sets");
  BoundParams p;
  for (const Chord& e : in.Edges()) {
    if (!tar.Contains(e)) {
      ++p.d;
    } else if (IsHullEdge(e, in.n())) {
      ++p.b;
    } else {
      ++p.c;
    }
  }
  return p;
}

FlipSequence ResolveAB(const Tree& context, const std::vector<GapPair>& pairs) {
  std::vector<ConflictNode> nodes;
  for (const GapPair& p : pairs) nodes.push_back(ToConflictNode(p));
  ConflictGraph g(nodes, ConflictMode::kFull);
  Builder b(context);
  for (int i : g.TopologicalOrder()) b.Flip(pairs[i].e, pairs[i].e_tar);
  return b.sequence();
}

FlipSequence ResolveC(const Tree& context, const std::vector<GapPair>& pairs) {
  Builder b(context);
  if (pairs.empty()) return b.sequence();
  std::vector<ConflictNode> nodes;
  for (const GapPair& p : pairs) nodes.push_back(ToConflictNode(p));
  ConflictGraph(nodes, ConflictMode::kCrossingOnly).TopologicalOrder();
  const Chord park(1, context.n());
  std::vector<bool> alive(nodes.size(), true);
  auto next_root = [&] {
    auto r = TopmostRoot(nodes, alive);
    if (!r) throw CycleDetected("no topmost root among remaining crossing pairs");
    alive[*r] = false;
    return *r;
  };
  int r = next_root();
  b.Flip(nodes[r].e, park);
  Chord pending = nodes[r].e_tar;
  for (std::size_t round = 1; round < nodes.size(); ++round) {
    r = next_root();
    b.Flip(nodes[r].e, pending);
    pending = nodes[r].e_tar;
  }
  b.Flip(park, pending);
  return b.sequence();
}

FlipSequence HullCoveredSequence(const Tree& in, const Tree& tar,
                                 HullCoveredStats* stats) {
  const int n = in.n();
  const ChordTable& table = ChordTable::For(n);
  if (in == tar) return {in, {}};
  FLIPSPAN_CHECK(((in.mask() | tar.mask()) & table.Hull()) == table.Hull(),
                 "trees do not cover the hull");
  HullCoveredStats local;
  HullCoveredStats& st = stats ? *stats : local;
  constexpr std::int64_t kStateCap = 2'000'000;

  struct Candidate {
    int rank;
    Chord removed;
    Chord added;
  };
  auto candidates = [&](const Tree& cur) {
    std::vector<Candidate> out;
    ChordSet extra = Minus(cur.mask(), tar.mask());
    ChordSet missing = Minus(tar.mask(), cur.mask());
    extra.ForEach([&](int ri) {
      const Chord& r = table.At(ri);
      ChordSet rest = cur.mask();
      rest.Reset(ri);
      VertexMask side = cur.Component(r.a, r);
      missing.ForEach([&](int ai) {
        const Chord& a = table.At(ai);
        if (((side >> a.a) & 1U) == ((side >> a.b) & 1U)) return;
        if (table.Crossing(ai).Intersects(rest) || table.Crossing(ai).Test(ri))
          return;
        bool ah = table.IsHull(ai), rh = table.IsHull(ri);
        int rank = ah && !rh ? 0 : ah ? 1 : rh ? 2 : 3;
        out.push_back({rank, r, a});
      });
    });
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& x, const Candidate& y) {
                       return x.rank < y.rank;
                     });
    return out;
  };

  std::unordered_set<ChordSet, ChordSetHash> dead;
  std::vector<FlipStep> steps;
  auto dfs = [&](auto&& self, const Tree& cur) -> bool {
    if (cur == tar) return true;
    if (++st.states > kStateCap) {
      throw StuckWithoutPerfectFlip("perfect compatible flip search exceeded cap");
    }
    if (dead.contains(cur.mask())) return false;
    bool first = true;
    for (const Candidate& c : candidates(cur)) {
      if (!first) ++st.backtracks;
      first = false;
      steps.push_back({c.removed, c.added, FlipKind::kCompatible});
      if (self(self, cur.WithSwap(c.removed, c.added))) return true;
      steps.pop_back();
    }
    dead.insert(cur.mask());
    return false;
  };
  if (!dfs(dfs, in)) {
    throw StuckWithoutPerfectFlip("no perfect compatible flip sequence from " +
                                  ToString(in) + " to " + ToString(tar));
  }
  FlipSequence out{in, steps};
  FLIPSPAN_CHECK(Apply(out) == tar, "hull-covered sequence misses target");
  return out;
}

FlipSequence FivePhaseSequence(const Tree& in, const Tree& tar,
                               RegionReport* report) {
  const int n = in.n();
  FLIPSPAN_CHECK(!in.Contains(Chord(1, n)) && !tar.Contains(Chord(1, n)),
                 "(1,n) must be a common hull gap");
  auto pairs = PairGapwise(in, tar);
  std::vector<GapPair> rest, cls[3];
  int b = 0;
  for (const GapPair& p : pairs) {
    switch (p.pair_class) {
      case PairClass::kEqual:
        FLIPSPAN_CHECK(IsHullEdge(p.e, n), "common diagonal reached the phase engine");
        ++b;
        break;
      case PairClass::kRest:
        rest.push_back(p);
        break;
      case PairClass::kAbove:
        cls[0].push_back(p);
        break;
      case PairClass::kBelow:
        cls[1].push_back(p);
        break;
      case PairClass::kCrossing:
        cls[2].push_back(p);
        break;
    }
  }
  // Largest class, ties resolved A, B, C.
  int largest = 0;
  for (int i = 1; i < 3; ++i)
    if (cls[i].size() > cls[largest].size()) largest = i;
  std::vector<GapPair> small;
  for (int i = 0; i < 3; ++i)
    if (i != largest) small.insert(small.end(), cls[i].begin(), cls[i].end());

  int d1 = 0;
  for (const GapPair& p : rest) {
    int s = (p.e_class == EdgeClass::kShort) + (p.e_tar_class == EdgeClass::kShort);
    FLIPSPAN_CHECK(s <= 1, "pair of two distinct short edges");
    if (s == 1) ++d1;
  }
  const int d2 = static_cast<int>(rest.size()) - d1;
  const int d3 = static_cast<int>(cls[0].size() + cls[1].size() + cls[2].size());
  {
    SnwClasses si = ClassifySnw(in), st = ClassifySnw(tar);
    int shorts = static_cast<int>(si.shorts.size() + st.shorts.size());
    FLIPSPAN_CHECK(d1 == shorts - 2 * b, "one-short pair count mismatch");
    FLIPSPAN_CHECK(d2 <= d1 + 2 * b - 4, "too many pairs without short edges");
  }

  Builder fwd(in);
  FlipToGaps(&fwd, rest, false);
  const int phase1 = fwd.sequence().size();
  FlipToGaps(&fwd, small, false);
  const int phase2 = fwd.sequence().size() - phase1;

  Builder bwd(tar);
  FlipToGaps(&bwd, rest, true);
  const int phase5 = bwd.sequence().size();
  FlipToGaps(&bwd, small, true);
  const int phase4 = bwd.sequence().size() - phase5;
  FLIPSPAN_CHECK(phase1 + phase5 == d1 + 2 * d2, "per-pair accounting 2 - s violated");

  FlipSequence middle = largest == 2 ? ResolveC(fwd.current(), cls[2])
                                     : ResolveAB(fwd.current(), cls[largest]);
  FLIPSPAN_CHECK(Apply(middle) == bwd.current(),
                 "phase 3 does not meet the backward half");
  const int expected3 = static_cast<int>(cls[largest].size()) +
                        (largest == 2 && !cls[2].empty() ? 1 : 0);
  FLIPSPAN_CHECK(middle.size() == expected3, "phase 3 length");

  FlipSequence out = Concat(Concat(fwd.sequence(), middle), Reverse(bwd.sequence()));
  FLIPSPAN_CHECK(Apply(out) == tar, "five-phase sequence misses target");
  if (report) {
    report->d = d1 + d2 + d3;
    report->b = b;
    report->d1 = d1;
    report->d2 = d2;
    report->d3 = d3;
    report->size_a = static_cast<int>(cls[0].size());
    report->size_b = static_cast<int>(cls[1].size());
    report->size_c = static_cast<int>(cls[2].size());
    report->largest = largest == 0   ? PairClass::kAbove
                      : largest == 1 ? PairClass::kBelow
                                     : PairClass::kCrossing;
    int lens[5] = {phase1, phase2, middle.size(), phase4, phase5};
    std::copy(lens, lens + 5, report->phase_lengths);
    report->emitted = out.size();
  }
  return out;
}

FlipSequence CompatibleSequence(const Tree& in, const Tree& tar,
                                CompatibleReport* report) {
  if (in.n() != tar.n()) throw InvalidInput("trees on different point sets");
  const int n = in.n();
  CompatibleReport local;
  CompatibleReport& rep = report ? *report : local;
  rep = CompatibleReport{};
  rep.params = ComputeBoundParams(in, tar);

  std::vector<Chord> cuts;
  for (const Chord& e : in.Edges())
    if (tar.Contains(e) && !IsHullEdge(e, n)) cuts.push_back(e);
  auto regions = CutRegions(n, cuts);
  std::sort(regions.begin(), regions.end());

  FlipSequence out{in, {}};
  for (const auto& labels : regions) {
    const int m = static_cast<int>(labels.size());
    std::vector<int> local_of(n + 1, 0);
    for (int i = 0; i < m; ++i) local_of[labels[i]] = i + 1;
    auto restrict = [&](const Tree& t) {
      std::vector<Chord> edges;
      for (const Chord& e : t.Edges())
        if (local_of[e.a] && local_of[e.b])
          edges.emplace_back(local_of[e.a], local_of[e.b]);
      return Tree::FromEdges(m, edges);
    };
    Tree lin = restrict(in), ltar = restrict(tar);
    RegionReport rr;
    rr.labels = labels;
    BoundParams lp = ComputeBoundParams(lin, ltar);
    FLIPSPAN_CHECK(lp.c == 0, "region still has a common diagonal");
    FlipSequence seq;
    if (auto shift = RelabelForCommonHullGap(lin, ltar)) {
      FlipSequence shifted =
          FivePhaseSequence(Relabel(lin, *shift), Relabel(ltar, *shift), &rr);
      seq = Relabeled(shifted, UndoShift(m, *shift));
    } else {
      rr.hull_covered = true;
      seq = HullCoveredSequence(lin, ltar, &rep.hull_covered);
    }
    rr.d = lp.d;
    rr.b = lp.b;
    rr.emitted = seq.size();
    FLIPSPAN_CHECK(lp.Admits(seq.size()) || (lp.d == 0 && seq.size() == 0),
                   "region sequence exceeds its bound");
    for (const FlipStep& s : seq.steps) {
      out.steps.push_back(
          {MapChord(s.removed, labels), MapChord(s.added, labels), s.kind});
    }
    rep.regions.push_back(std::move(rr));
  }
  auto traj = Trajectory(out);
  FLIPSPAN_CHECK(traj.back() == tar, "compatible sequence misses target");
  ChordSet happy = in.mask() & tar.mask();
  for (const FlipStep& s : out.steps) {
    FLIPSPAN_CHECK(!happy.Test(ChordTable::For(n).Index(s.removed)),
                   "compatible sequence removes a common edge");
  }
  rep.emitted = out.size();
  return out;
}

}  // namespace flipspan
