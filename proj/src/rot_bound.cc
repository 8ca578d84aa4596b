#include "flipspan/rot_bound.h"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

#include "flipspan/linrep.h"

namespace flipspan {
namespace {

class RotBuilder {
 public:
  explicit RotBuilder(const Tree& start) : cur_(start), seq_{start, {}} {}

  bool TryRotate(const Chord& removed, const Chord& added) {
    auto k = TryClassifyFlip(cur_, removed, added);
    if (!k || !Satisfies(*k, FlipKind::kRotation)) return false;
    seq_.steps.push_back({removed, added, FlipKind::kRotation});
    cur_ = cur_.WithSwap(removed, added);
    return true;
  }

  const Tree& current() const { return cur_; }
  const FlipSequence& sequence() const { return seq_; }

 private:
  Tree cur_;
  FlipSequence seq_;
};

// A face worked on in local labels 1..m; order[i-1] is the global label.
struct LocalView {
  std::vector<int> order;
  std::vector<int> local;  // global -> local, 0 when outside

  LocalView(int n, std::vector<int> o) : order(std::move(o)), local(n + 1, 0) {
    for (std::size_t i = 0; i < order.size(); ++i) local[order[i]] = i + 1;
  }
  int m() const { return static_cast<int>(order.size()); }
  Chord ToGlobal(const Chord& c) const {
    return Chord(order[c.a - 1], order[c.b - 1]);
  }
  Tree Restrict(const Tree& t) const {
    std::vector<Chord> edges;
    for (const Chord& c : t.Edges())
      if (local[c.a] && local[c.b]) edges.emplace_back(local[c.a], local[c.b]);
    return Tree::FromEdges(m(), edges);
  }
};

void ApplyLocal(RotBuilder* b, const LocalView& v, const FlipSequence& seq) {
  for (const FlipStep& s : seq.steps) {
    Chord r = v.ToGlobal(s.removed), a = v.ToGlobal(s.added);
    FLIPSPAN_CHECK(b->TryRotate(r, a),
                   "face rotation " + ToString(r) + " -> " + ToString(a) +
                       " is not a rotation globally");
  }
}

// Chords of `chords` with both ends in the view, in local labels.
std::vector<Chord> LocalChords(const LocalView& v, const std::vector<Chord>& chords) {
  std::vector<Chord> out;
  for (const Chord& c : chords)
    if (v.local[c.a] && v.local[c.b]) out.emplace_back(v.local[c.a], v.local[c.b]);
  return out;
}

void AppendRotations(RotBuilder* b, const FlipSequence& seq) {
  for (const FlipStep& s : seq.steps) {
    FLIPSPAN_CHECK(b->TryRotate(s.removed, s.added),
                   "not a rotation: " + ToString(s.removed) + " -> " +
                       ToString(s.added));
  }
}

}  // namespace

std::vector<Chord> RootedAttachment(const Tree& t, int root) {
  int n = t.n();
  std::vector<Chord> att(n + 1);
  std::vector<bool> seen(n + 1, false);
  std::vector<int> queue = {root};
  seen[root] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int u = queue[q];
    for (int w : t.Neighbors(u)) {
      if (seen[w]) continue;
      seen[w] = true;
      att[w] = Chord(u, w);
      queue.push_back(w);
    }
  }
  return att;
}

std::string ToString(RotClass c) {
  switch (c) {
    case RotClass::kRA: return "RA";
    case RotClass::kLA: return "LA";
    case RotClass::kRB: return "RB";
    case RotClass::kLB: return "LB";
    case RotClass::kDiving: return "D";
    case RotClass::kJumping: return "J";
  }
  return "?";
}

std::string ToString(RotSide s) {
  switch (s) {
    case RotSide::kL: return "L";
    case RotSide::kR: return "R";
    case RotSide::kD: return "D";
    case RotSide::kJ: return "J";
  }
  return "?";
}

RotSide RotPair::side() const {
  switch (cls) {
    case RotClass::kRA:
    case RotClass::kRB: return RotSide::kR;
    case RotClass::kLA:
    case RotClass::kLB: return RotSide::kL;
    case RotClass::kDiving: return RotSide::kD;
    case RotClass::kJumping: return RotSide::kJ;
  }
  return RotSide::kR;
}

int RotPairing::Count(RotSide s) const {
  switch (s) {
    case RotSide::kL: return count_l;
    case RotSide::kR: return count_r;
    case RotSide::kD: return count_d;
    case RotSide::kJ: return count_j;
  }
  return 0;
}

RotPairing PairRotations(const Tree& in, const Tree& tar) {
  if (in.n() != tar.n()) throw InvalidInput("trees differ in point count");
  int n = in.n();
  auto att_in = RootedAttachment(in, n);
  auto att_tar = RootedAttachment(tar, n);
  RotPairing p;
  p.n = n;
  for (int i = 1; i < n; ++i) {
    RotPair r;
    r.vertex = i;
    r.e_in = att_in[i];
    r.e_tar = att_tar[i];
    int j = r.e_in.Other(i), k = r.e_tar.Other(i);
    if (j == k) {
      r.happy = true;
      r.cls = j < i ? RotClass::kRA : RotClass::kLA;
    } else if (j < i && k < i) {
      r.cls = j <= k ? RotClass::kRA : RotClass::kRB;
    } else if (j > i && k > i) {
      r.cls = k <= j ? RotClass::kLA : RotClass::kLB;
    } else if (j < i) {
      r.cls = RotClass::kDiving;
    } else {
      r.cls = RotClass::kJumping;
    }
    switch (r.side()) {
      case RotSide::kL: ++p.count_l; break;
      case RotSide::kR: ++p.count_r; break;
      case RotSide::kD: ++p.count_d; break;
      case RotSide::kJ: ++p.count_j; break;
    }
    p.pairs.push_back(r);
  }
  return p;
}

Chord GapAssignment(int m, int j, int k) {
  if (j < 0 || j >= m || k < 1 || k >= m)
    throw InvalidInput("gap assignment out of range");
  if (k > j) return Chord(k, k + 1);
  return k == 1 ? Chord(1, m) : Chord(k - 1, k);
}

Tree StarTarget(int m, int j, const std::vector<bool>& kstar) {
  std::vector<Chord> edges;
  for (int k = 1; k < m; ++k)
    edges.push_back(kstar[k] ? Chord(k, m) : GapAssignment(m, j, k));
  return Tree::FromEdges(m, edges);
}

namespace {

constexpr std::int64_t kStarSearchNodes = 2'000'000;

// Depth-bounded search for a rotation sequence into `goal` that never removes
// a frozen edge. Perfect moves are tried first.
class StarSearch {
 public:
  StarSearch(const Tree& goal, const ChordSet& frozen)
      : goal_(goal), frozen_(frozen), table_(ChordTable::For(goal.n())) {}

  bool Run(const Tree& t, int budget, std::vector<FlipStep>* out) {
    path_.clear();
    if (!Dfs(t, budget)) return false;
    *out = path_;
    return true;
  }

 private:
  bool Dfs(const Tree& t, int left) {
    if (t == goal_) return true;
    int h = Minus(t.mask(), goal_.mask()).Count();
    if (h > left) return false;
    auto it = failed_.find(t.mask());
    if (it != failed_.end() && it->second >= left) return false;
    if (++nodes_ > kStarSearchNodes) {
      throw NoApplicableRotation("star search exceeded its node cap");
    }
    std::vector<std::pair<int, std::pair<int, int>>> moves;
    internal::ForEachFlip(t, FlipKind::kRotation, [&](int ri, int ai) {
      if (frozen_.Test(ri)) return;
      int rank = (goal_.ContainsIndex(ri) ? 2 : 0) + (goal_.ContainsIndex(ai) ? 0 : 1);
      moves.push_back({rank, {ri, ai}});
    });
    std::stable_sort(moves.begin(), moves.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [rank, m] : moves) {
      // A move that is not perfect must be paid for by slack.
      if (rank != 0 && h + 1 > left) break;
      const Chord& r = table_.At(m.first);
      const Chord& a = table_.At(m.second);
      path_.push_back({r, a, FlipKind::kRotation});
      if (Dfs(t.WithSwap(r, a), left - 1)) return true;
      path_.pop_back();
    }
    failed_[t.mask()] = std::max(left, it == failed_.end() ? -1 : it->second);
    return false;
  }

  const Tree& goal_;
  ChordSet frozen_;
  const ChordTable& table_;
  std::unordered_map<ChordSet, int, ChordSetHash> failed_;
  std::vector<FlipStep> path_;
  std::int64_t nodes_ = 0;
};

}  // namespace

// Exchanges each vertex's attached edge for its target where the target is
// free. When two unfinished vertices block each other (the target of one is
// still the attached edge of the other) the greedy stops and a bounded search
// takes over within the budget, by default one rotation per unfinished vertex.
FlipSequence StarTransform(const Tree& t, int j, const std::vector<bool>& kstar,
                           int budget, const std::vector<Chord>& keep) {
  int m = t.n();
  Tree goal = StarTarget(m, j, kstar);
  auto att = RootedAttachment(t, m);
  const ChordTable& table = ChordTable::For(m);
  std::vector<Chord> target(m);
  std::vector<int> pending;
  ChordSet kept;
  for (const Chord& c : keep) kept.Set(table.Index(c));
  ChordSet frozen = kept;
  for (int k = 1; k < m; ++k) {
    target[k] = kstar[k] ? Chord(k, m) : GapAssignment(m, j, k);
    if (att[k] != target[k]) {
      pending.push_back(k);
    } else {
      frozen.Set(table.Index(att[k]));
    }
  }
  // With the default budget (one flip per pending vertex) the preserved edges
  // stay frozen throughout.
  bool default_budget = budget < 0;
  if (default_budget) {
    budget = static_cast<int>(pending.size());
    kept = frozen;
  }
  RotBuilder b(t);
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      int k = *it;
      const Tree& cur = b.current();
      if (cur.Contains(att[k]) && !cur.Contains(target[k]) &&
          b.TryRotate(att[k], target[k])) {
        frozen.Set(table.Index(target[k]));
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  FlipSequence seq = b.sequence();
  if (!pending.empty()) {
    std::vector<FlipStep> rest;
    if (StarSearch(goal, frozen).Run(b.current(), budget - seq.size(), &rest)) {
      seq.steps.insert(seq.steps.end(), rest.begin(), rest.end());
    } else if (StarSearch(goal, kept).Run(t, budget, &rest)) {
      seq.steps = rest;
    } else {
      throw NoApplicableRotation("star transform stuck at v" +
                                 std::to_string(pending.front()) + " in " +
                                 ToString(b.current()) + " with budget " +
                                 std::to_string(budget));
    }
  }
  FLIPSPAN_CHECK(seq.size() <= budget, "star transform over budget");
  FLIPSPAN_CHECK(Apply(seq) == goal, "star transform missed its target");
  return seq;
}

Tree HullFormFor(int n, const std::vector<Chord>& kept, RotSide side) {
  std::vector<bool> owned(n + 1, false);
  std::vector<Chord> edges = kept;
  for (const Chord& c : kept) owned[side == RotSide::kR ? c.b : c.a] = true;
  for (int k = 1; k < n; ++k) {
    if (owned[k]) continue;
    if (side == RotSide::kR) {
      edges.push_back(k == 1 ? Chord(1, n) : Chord(k - 1, k));
    } else {
      edges.push_back(Chord(k, k + 1));
    }
  }
  return Tree::FromEdges(n, edges);
}

// Every face gets a star transform rooted at its apex. For R the apex is the
// rightmost vertex and each vertex takes the gap on its left. For L the outer
// face (holding v_1 and v_n) keeps v_n as apex; inner faces hang from the
// left end of their cut edge, so the local order starts right after it.
// Both L variants use j = 0, i.e. every vertex takes the gap on its right.
FlipSequence RotateToHull(const Tree& t, const std::vector<Chord>& cuts,
                          RotSide side) {
  FLIPSPAN_CHECK(side == RotSide::kL || side == RotSide::kR,
                 "side must be L or R");
  int n = t.n();
  RotBuilder b(t);
  for (const std::vector<int>& region : CutRegions(n, cuts)) {
    if (region.size() < 3) continue;
    std::vector<int> order = region;
    bool outer = region.front() == 1 && region.back() == n;
    if (side == RotSide::kL && !outer) {
      std::rotate(order.begin(), order.begin() + 1, order.end());
    }
    LocalView view(n, order);
    int j = side == RotSide::kR ? view.m() - 1 : 0;
    // A kept (1,n) is a hull edge, so it cuts nothing; v_1 points at the apex.
    std::vector<bool> kstar(view.m() + 1, false);
    if (side == RotSide::kL && outer &&
        std::find(cuts.begin(), cuts.end(), Chord(1, n)) != cuts.end()) {
      kstar[1] = true;
    }
    ApplyLocal(&b, view, StarTransform(view.Restrict(b.current()), j, kstar,
                                       -1, LocalChords(view, cuts)));
  }
  FLIPSPAN_CHECK(b.current() == HullFormFor(n, cuts, side),
                 "rotate-to-hull ended outside the hull form");
  return b.sequence();
}

FlipSequence ResolveLR(const Tree& t1, const RotPairing& p, RotSide side) {
  std::vector<ConflictNode> nodes;
  for (const RotPair& r : p.pairs) {
    if (r.side() != side || r.happy) continue;
    int v = r.vertex;
    Chord gap = side == RotSide::kR ? Chord(v - 1, v) : Chord(v, v + 1);
    nodes.push_back({r.e_in, r.e_tar, gap});
  }
  RotBuilder b(t1);
  if (nodes.empty()) return b.sequence();
  ConflictGraph g(nodes, ConflictMode::kFull);
  for (int i : g.TopologicalOrder()) {
    FLIPSPAN_CHECK(b.TryRotate(nodes[i].e, nodes[i].e_tar),
                   "conflict order rotation " + ToString(nodes[i].e) + " -> " +
                       ToString(nodes[i].e_tar) + " invalid");
  }
  return b.sequence();
}

bool IsMeetingTree(const Tree& t, const RotPairing& p, std::string* why) {
  int n = t.n();
  auto att = RootedAttachment(t, n);
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int v = 1; v < n; ++v) {
    const RotPair& r = p.At(v);
    const Chord& e = att[v];
    if (r.side() == RotSide::kJ) {
      if (e != r.e_tar) return fail("J vertex v" + std::to_string(v) +
                                    " lacks its target edge");
      continue;
    }
    if (e == Chord(v - 1, v) && v > 1) continue;
    int w = e.Other(v);
    if (w > v && (w == n || p.At(w).side() == RotSide::kJ)) continue;
    return fail("edge " + ToString(e) + " at v" + std::to_string(v) +
                " has no permitted type");
  }
  return true;
}

// Case machine on a reduced polygon. Live vertices are intervals of labels
// [lo, hi]; a contracted interval is named by its right end. Cut vertices
// disappear. Real edges map to reduced edges between distinct live intervals.
FlipSequence DjForward(const Tree& in, const RotPairing& p) {
  int n = in.n();
  RotBuilder b(in);
  if (!in.Contains(Chord(1, n))) {
    Chord first = RootedAttachment(in, n)[1];
    FLIPSPAN_CHECK(b.TryRotate(first, Chord(1, n)), "opener failed");
  }
  struct Live {
    int lo, hi;
  };
  std::vector<Live> live;
  for (int v = 1; v <= n; ++v) live.push_back({v, v});

  auto stuck = [&](const std::string& msg) {
    return CaseMachineStuck(msg + " at " + ToString(b.current()));
  };
  auto rotate = [&](const Chord& r, const Chord& a) {
    if (!b.TryRotate(r, a))
      throw stuck("rotation " + ToString(r) + " -> " + ToString(a) + " invalid");
  };

  for (int iter = 0;; ++iter) {
    if (iter > 2 * n) throw stuck("no termination");
    int m = static_cast<int>(live.size());
    if (m < 3) break;
    std::vector<int> owner(n + 1, 0);  // reduced label, 0 when cut
    for (int s = 0; s < m; ++s)
      for (int v = live[s].lo; v <= live[s].hi; ++v) owner[v] = s + 1;
    std::map<Chord, Chord> real;
    std::vector<Chord> redges;
    for (const Chord& c : b.current().Edges()) {
      int x = owner[c.a], y = owner[c.b];
      if (x && y && x != y) {
        real[Chord(x, y)] = c;
        redges.emplace_back(x, y);
      }
    }
    TreeValidation tv = ValidateTree(redges, m);
    if (!tv.ok()) throw stuck("reduced graph is not a tree");
    const Tree& red = *tv.tree;
    auto att = RootedAttachment(red, m);
    auto hull = [&](const Chord& c) { return IsHullEdge(c, m); };

    int gi = 0;
    for (const Face& f : Faces(red)) {
      if (std::find(f.border.begin(), f.border.end(), Chord(1, m)) !=
          f.border.end()) {
        gi = f.hull_gap.a;
      }
    }
    if (gi == 0) throw stuck("no face below (1,n)");

    if (gi + 1 == m) {
      int k = 0;
      for (int v = m - 1; v >= 2 && !k; --v)
        if (!hull(att[v])) k = v;
      if (!k) break;
      if (att[k].b != k) throw stuck("rightmost non-hull edge is left attached");
      int lo = live[k - 1].lo;
      rotate(real[att[k]], Chord(lo, n));
      live.erase(live.begin() + (k - 1), live.end());
      live.push_back({lo, n});
      continue;
    }

    int bi = gi + 1;
    int vr = live[bi - 1].hi;
    const RotPair& pr = p.At(vr);
    Chord er = real[att[bi]];
    if (pr.side() == RotSide::kL) {
      rotate(er, Chord(live[gi - 1].hi, live[bi - 1].lo));
      continue;
    }
    if (pr.side() != RotSide::kJ) {
      throw stuck("visible gap right of a " + ToString(pr.side()) + " vertex");
    }
    int sj = owner[pr.e_tar.Other(vr)];
    if (!sj || sj >= bi) throw stuck("J target endpoint not live on the left");
    int k = 0;
    for (int v = bi - 1; v > sj && !k; --v)
      if (!hull(att[v])) k = v;
    if (!k) {
      rotate(er, pr.e_tar);
      live.erase(live.begin() + sj, live.begin() + (bi - 1));
    } else {
      if (att[k].b != k) throw stuck("rightmost non-hull edge is left attached");
      int lo = live[k - 1].lo;
      rotate(real[att[k]], Chord(lo, vr));
      int hi = live[bi - 1].hi;
      live.erase(live.begin() + (k - 1), live.begin() + bi);
      live.insert(live.begin() + (k - 1), Live{lo, hi});
    }
  }
  std::string why;
  if (!IsMeetingTree(b.current(), p, &why)) throw stuck(why);
  return b.sequence();
}

namespace {

// Shortest rotation sequence into `goal` that keeps `keep`, by iterative
// deepening up to max_len.
std::optional<FlipSequence> MinimalStar(const Tree& t, const Tree& goal,
                                        const std::vector<Chord>& keep,
                                        int max_len) {
  const ChordTable& table = ChordTable::For(t.n());
  ChordSet kept;
  for (const Chord& c : keep) kept.Set(table.Index(c));
  StarSearch search(goal, kept);
  std::vector<FlipStep> steps;
  for (int len = Minus(t.mask(), goal.mask()).Count(); len <= max_len; ++len) {
    if (search.Run(t, len, &steps)) return FlipSequence{t, steps};
  }
  return std::nullopt;
}

}  // namespace

// One star per face of T_tar cut along the J targets. Faces touch only along
// frozen cut edges, so each is solved on its own and the results are
// replayed in order. The per-face count of the star transform is not always
// attainable, so faces that defeat the greedy get a shortest sequence and
// only the total is held to the budget.
FlipSequence DjBackward(const Tree& tar, const RotPairing& p, const Tree& tstar,
                        int budget) {
  int n = tar.n();
  if (budget < 0) budget = n - 1 - p.count_j;
  std::vector<Chord> cuts;
  for (const RotPair& r : p.pairs)
    if (r.side() == RotSide::kJ) cuts.push_back(r.e_tar);

  struct FaceJob {
    LocalView view;
    Tree local, goal;
    std::vector<Chord> keep;
    std::optional<FlipSequence> seq;
  };
  std::vector<FaceJob> jobs;
  for (const std::vector<int>& region : CutRegions(n, cuts)) {
    if (region.size() < 3) continue;
    LocalView view(n, region);
    int m = view.m(), apex = region.back();
    std::vector<bool> kstar(m + 1, false);
    for (int k = 1; k < m; ++k)
      kstar[k] = tstar.Contains(Chord(region[k - 1], apex));
    FaceJob job{view, view.Restrict(tar), StarTarget(m, m - 1, kstar),
                LocalChords(view, cuts), std::nullopt};
    FLIPSPAN_CHECK(job.goal == view.Restrict(tstar),
                   "meeting tree is not a star on a J face");
    try {
      job.seq = StarTransform(job.local, m - 1, kstar,
                              m - 1 - static_cast<int>(job.keep.size()), job.keep);
    } catch (const NoApplicableRotation&) {
    }
    jobs.push_back(std::move(job));
  }

  auto total = [&] {
    int used = 0;
    for (const FaceJob& j : jobs) used += j.seq ? j.seq->size() : 0;
    return used;
  };
  auto lower = [&](const FaceJob& j) {
    return Minus(j.local.mask(), j.goal.mask()).Count();
  };
  for (bool all : {false, true}) {
    bool open = false;
    for (const FaceJob& j : jobs) open |= !j.seq;
    if (!open && total() <= budget) break;
    if (all) {
      for (FaceJob& j : jobs) j.seq.reset();
    }
    for (FaceJob& j : jobs) {
      if (j.seq) continue;
      int others = 0;
      for (const FaceJob& o : jobs)
        if (&o != &j) others += o.seq ? o.seq->size() : lower(o);
      j.seq = MinimalStar(j.local, j.goal, j.keep, budget - others);
      if (!j.seq) break;
    }
  }
  for (const FaceJob& j : jobs) {
    if (!j.seq) {
      throw NoApplicableRotation("J faces of " + ToString(tar) +
                                 " need more than " + std::to_string(budget) +
                                 " rotations");
    }
  }
  FLIPSPAN_CHECK(total() <= budget, "backward J phase over budget");

  RotBuilder b(tar);
  for (const FaceJob& j : jobs) ApplyLocal(&b, j.view, *j.seq);
  FLIPSPAN_CHECK(b.current() == tstar, "backward J phase missed the meeting tree");
  return b.sequence();
}

namespace {

FlipSequence JumpStrategy(const Tree& in, const Tree& tar, const RotPairing& p) {
  int n = in.n();
  FlipSequence fwd = DjForward(in, p);
  FLIPSPAN_CHECK(fwd.size() <= n - 1, "forward J phase too long");
  Tree tstar = Apply(fwd);
  // Held to what the whole strategy may still spend; see DjBackward.
  FlipSequence bwd =
      DjBackward(tar, p, tstar, 2 * (n - 1) - p.count_j - fwd.size());
  return Concat(fwd, Reverse(bwd));
}

FlipSequence SideStrategy(const Tree& in, const Tree& tar, const RotPairing& p,
                          RotSide side) {
  int n = in.n();
  std::vector<Chord> kept_in, kept_tar;
  for (const RotPair& r : p.pairs) {
    if (r.side() != side) continue;
    kept_in.push_back(r.e_in);
    kept_tar.push_back(r.e_tar);
  }
  FlipSequence s1 = RotateToHull(in, kept_in, side);
  FlipSequence s2 = ResolveLR(Apply(s1), p, side);
  FLIPSPAN_CHECK(Apply(s2) == HullFormFor(n, kept_tar, side),
                 "resolve ended outside the target hull form");
  FlipSequence s3 = RotateToHull(tar, kept_tar, side);
  return Concat(Concat(s1, s2), Reverse(s3));
}

}  // namespace

FlipSequence RotationSequence(const Tree& in, const Tree& tar,
                              RotationReport* report) {
  RotPairing p = PairRotations(in, tar);
  int n = p.n;
  RotSide best = RotSide::kR;
  for (RotSide s : {RotSide::kL, RotSide::kJ, RotSide::kD})
    if (p.Count(s) > p.Count(best)) best = s;
  int bound = 2 * (n - 1) - p.Count(best);

  FlipSequence seq;
  switch (best) {
    case RotSide::kR:
    case RotSide::kL: seq = SideStrategy(in, tar, p, best); break;
    case RotSide::kJ: seq = JumpStrategy(in, tar, p); break;
    case RotSide::kD: {
      RotPairing swapped = PairRotations(tar, in);
      FLIPSPAN_CHECK(swapped.count_j == p.count_d, "D/J swap mismatch");
      seq = Reverse(JumpStrategy(tar, in, swapped));
      break;
    }
  }

  // Replays every step as a rotation.
  RotBuilder check(in);
  AppendRotations(&check, seq);
  FLIPSPAN_CHECK(check.current() == tar, "rotation sequence misses the target");
  FLIPSPAN_CHECK(seq.size() <= bound, "rotation sequence exceeds its bound");

  if (report) {
    report->count_l = p.count_l;
    report->count_r = p.count_r;
    report->count_d = p.count_d;
    report->count_j = p.count_j;
    report->strategy = best;
    report->bound = bound;
    report->emitted = seq.size();
  }
  return check.sequence();
}

}  // namespace flipspan
