#include "flipspan/fpt.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace flipspan {

namespace {

void RequireSameN(const Tree& in, const Tree& tar, int k) {
  if (in.n() != tar.n()) throw InvalidInput("fpt: trees on different point sets");
  if (k < 0) throw InvalidInput("fpt: k must be non-negative");
}

ChordSet AllChords(int n) {
  ChordSet s;
  for (int i = 0; i < ChordTable::For(n).size(); ++i) s.Set(i);
  return s;
}

// Depth-first search under a depth cap. States that failed with some
// remaining budget are remembered; the memo stays valid across caps.
class BoundedSearch {
 public:
  BoundedSearch(int n, FlipKind kind, const ChordSet& goal,
                const ChordSet& frozen, const ChordSet& allowed_add,
                std::int64_t* nodes, std::int64_t budget)
      : n_(n), kind_(kind), goal_(goal), frozen_(frozen),
        allowed_(allowed_add), nodes_(nodes), budget_(budget) {}

  bool Run(const ChordSet& start, int limit, std::vector<FlipStep>* out) {
    path_.clear();
    if (!Dfs(start, limit)) return false;
    const ChordTable& table = ChordTable::For(n_);
    out->clear();
    for (auto [ri, ai] : path_) out->push_back({table.At(ri), table.At(ai), kind_});
    return true;
  }

 private:
  struct Move {
    int ri, ai, score;
  };

  bool Dfs(const ChordSet& cur, int remaining) {
    if (cur == goal_) return true;
    if (Minus(goal_, cur).Count() > remaining) return false;
    auto it = failed_.find(cur);
    if (it != failed_.end() && it->second >= remaining) return false;
    if (++*nodes_ > budget_) {
      throw BudgetExceeded("fpt: node budget " + std::to_string(budget_) + " exceeded");
    }
    std::vector<Move> moves;
    internal::ForEachFlip(Tree::FromMaskUnchecked(n_, cur), kind_, [&](int ri, int ai) {
      if (frozen_.Test(ri) || !allowed_.Test(ai)) return;
      moves.push_back({ri, ai, 2 * goal_.Test(ai) + !goal_.Test(ri)});
    });
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Move& x, const Move& y) { return x.score > y.score; });
    for (const Move& mv : moves) {
      ChordSet next = cur;
      next.Reset(mv.ri);
      next.Set(mv.ai);
      path_.push_back({mv.ri, mv.ai});
      if (Dfs(next, remaining - 1)) return true;
      path_.pop_back();
    }
    int& f = failed_[cur];
    f = std::max(f, remaining);
    return false;
  }

  int n_;
  FlipKind kind_;
  ChordSet goal_, frozen_, allowed_;
  std::int64_t* nodes_;
  std::int64_t budget_;
  std::unordered_map<ChordSet, int> failed_;
  std::vector<std::pair<int, int>> path_;
};

FlipSequence Validated(const Tree& in, const Tree& tar, std::vector<FlipStep> steps) {
  FlipSequence s{in, std::move(steps)};
  Tree end;
  try {
    end = Apply(s);
  } catch (const InvalidInput& e) {
    FLIPSPAN_CHECK(false, std::string("lifted sequence is not valid: ") + e.what());
  }
  FLIPSPAN_CHECK(end == tar, "lifted sequence misses the target");
  return s;
}

// Cut along happy diagonals and solve each piece on its own. Exact for
// compatible flips because no shortest one removes a happy edge.
FptResult Decomposed(const Tree& in, const Tree& tar, int k, FlipKind kind,
                     double epsilon, const FptOptions& opts) {
  FptResult res;
  const int n = in.n();
  ChordSet happy = in.mask() & tar.mask();
  std::vector<Chord> cuts;
  const ChordTable& table = ChordTable::For(n);
  happy.ForEach([&](int i) {
    if (!table.IsHull(i)) cuts.push_back(table.At(i));
  });

  struct Component {
    std::vector<int> verts;  // local label r -> verts[r - 1]
    Tree in, tar;
    ReducedInstance reduced;
    int unhappy = 0;
    FlipSequence solved;
  };
  std::vector<Component> comps;
  for (const std::vector<int>& verts : CutRegions(n, cuts)) {
    std::vector<int> local(n + 1, 0);
    for (int r = 0; r < static_cast<int>(verts.size()); ++r) local[verts[r]] = r + 1;
    auto induced = [&](const Tree& t) {
      std::vector<Chord> e;
      for (const Chord& c : t.Edges()) {
        if (local[c.a] && local[c.b]) e.emplace_back(local[c.a], local[c.b]);
      }
      return Tree::FromEdges(static_cast<int>(verts.size()), e);
    };
    Component c{verts, induced(in), induced(tar), {}, 0, {}};
    if (c.in == c.tar) continue;
    c.unhappy = Minus(c.in.mask(), c.tar.mask()).Count();
    c.reduced = Contract(c.in, c.tar);
    comps.push_back(std::move(c));
  }

  const int small = static_cast<int>(std::ceil(1.0 / epsilon));
  std::stable_partition(comps.begin(), comps.end(),
                        [&](const Component& c) { return c.unhappy <= small; });
  int pending = 0;
  for (const Component& c : comps) pending += c.unhappy;
  if (pending > k) return res;

  int spent = 0;
  for (Component& c : comps) {
    pending -= c.unhappy;
    const int cap = k - spent - pending;
    const ReducedInstance& r = c.reduced;
    const int m = r.m();
    res.reduced_points = std::max(res.reduced_points, m);
    ChordSet allowed = kind == FlipKind::kCompatible
                           ? (r.in.mask() | r.tar.mask() | ChordTable::For(m).Hull())
                           : AllChords(m);
    BoundedSearch search(m, kind, r.tar.mask(), r.in.mask() & r.tar.mask(), allowed,
                         &res.nodes_expanded, opts.node_budget);
    std::vector<FlipStep> steps;
    bool ok = false;
    for (int limit = c.unhappy; limit <= cap && !ok; ++limit) {
      ok = search.Run(r.in.mask(), limit, &steps);
    }
    if (!ok) return res;
    c.solved = r.Lift(FlipSequence{r.in, steps}, c.in);
    spent += c.solved.size();
  }

  // Components are independent, so their sequences run back to back.
  std::sort(comps.begin(), comps.end(),
            [](const Component& x, const Component& y) { return x.verts < y.verts; });
  std::vector<FlipStep> all;
  for (const Component& c : comps) {
    for (const FlipStep& s : c.solved.steps) {
      all.push_back({Chord(c.verts[s.removed.a - 1], c.verts[s.removed.b - 1]),
                     Chord(c.verts[s.added.a - 1], c.verts[s.added.b - 1]), kind});
    }
  }
  res.sequence = Validated(in, tar, std::move(all));
  res.found = true;
  return res;
}

}  // namespace

FlipSequence ReducedInstance::Lift(const FlipSequence& reduced,
                                   const Tree& original_in) const {
  std::vector<FlipStep> steps;
  for (const FlipStep& s : reduced.steps) {
    steps.push_back({Lift(s.removed), Lift(s.added), s.kind});
  }
  FlipSequence out{original_in, std::move(steps)};
  try {
    Apply(out);
  } catch (const InvalidInput& e) {
    FLIPSPAN_CHECK(false, std::string("lift failed: ") + e.what());
  }
  return out;
}

ReducedInstance Contract(const Tree& in, const Tree& tar) {
  if (in.n() != tar.n()) throw InvalidInput("contract: trees on different point sets");
  const int n = in.n();
  ReducedInstance r;
  r.n = n;
  const ChordTable& table = ChordTable::For(n);
  (in.mask() ^ tar.mask()).ForEach([&](int i) {
    const Chord& c = table.At(i);
    r.marked |= (VertexMask{1} << c.a) | (VertexMask{1} << c.b);
  });

  // Both trees agree on every edge at an unmarked vertex, so one edge list
  // per tree in original labels is enough to track the shrinking polygon.
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 1);
  std::vector<Chord> ein = in.Edges(), etar = tar.Edges();
  auto incident = [](const std::vector<Chord>& es, int v) {
    std::vector<Chord> out;
    for (const Chord& c : es) {
      if (c.Has(v)) out.push_back(c);
    }
    return out;
  };
  auto erase = [](std::vector<Chord>& es, const Chord& c) {
    es.erase(std::find(es.begin(), es.end(), c));
  };

  bool changed = true;
  while (changed && verts.size() > 3) {
    changed = false;
    const int size = static_cast<int>(verts.size());
    for (int i = 0; i < size; ++i) {
      const int v = verts[i];
      if ((r.marked >> v) & 1U) continue;
      const int p = verts[(i + size - 1) % size], q = verts[(i + 1) % size];
      std::vector<Chord> a = incident(ein, v), b = incident(etar, v);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      FLIPSPAN_CHECK(a == b, "unmarked vertex with an unhappy edge");
      bool leaf = a.size() == 1 && (a[0] == Chord(v, p) || a[0] == Chord(v, q));
      bool path = a.size() == 2 && std::find(a.begin(), a.end(), Chord(v, p)) != a.end() &&
                  std::find(a.begin(), a.end(), Chord(v, q)) != a.end();
      if (!leaf && !path) continue;
      for (const Chord& c : a) {
        erase(ein, c);
        erase(etar, c);
      }
      if (path) {
        ein.emplace_back(p, q);
        etar.emplace_back(p, q);
      }
      verts.erase(verts.begin() + i);
      changed = true;
      break;
    }
  }

  const int m = static_cast<int>(verts.size());
  r.reduced_label.assign(n + 1, 0);
  r.original_label.assign(m + 1, 0);
  for (int i = 0; i < m; ++i) {
    r.reduced_label[verts[i]] = i + 1;
    r.original_label[i + 1] = verts[i];
  }
  auto relabel = [&](const std::vector<Chord>& es) {
    std::vector<Chord> out;
    for (const Chord& c : es) out.emplace_back(r.reduced_label[c.a], r.reduced_label[c.b]);
    return Tree::FromEdges(m, out);
  };
  r.in = relabel(ein);
  r.tar = relabel(etar);
  return r;
}

ChordSet GoodHappyEdges(const Tree& in, const Tree& tar) {
  if (in.n() != tar.n()) throw InvalidInput("good_happy_edges: trees on different point sets");
  const int n = in.n();
  const ChordTable& table = ChordTable::For(n);
  ChordSet happy = in.mask() & tar.mask();
  ChordSet unhappy = in.mask() ^ tar.mask();
  ChordSet good;
  happy.ForEach([&](int i) {
    if (table.IsHull(i)) {
      good.Set(i);
      return;
    }
    const Chord& e = table.At(i);
    bool inside_clean = true, outside_clean = true;
    unhappy.ForEach([&](int u) {
      const Chord& c = table.At(u);
      // Edges never cross e, so each lies on one side.
      if (c.a >= e.a && c.b <= e.b) {
        inside_clean = false;
      } else {
        outside_clean = false;
      }
    });
    if (inside_clean || outside_clean) good.Set(i);
  });
  return good;
}

std::vector<DualTreePath> DualTreePaths(const Tree& in, const Tree& tar) {
  if (in.n() != tar.n()) throw InvalidInput("dual tree paths: trees on different point sets");
  const int n = in.n();
  const ChordTable& table = ChordTable::For(n);
  ChordSet loose = Minus(in.mask() & tar.mask(), GoodHappyEdges(in, tar));
  std::vector<int> parent(table.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  ChordSet tar_only = Minus(tar.mask(), in.mask());
  for (const Face& f : Faces(in)) {
    bool clean = std::all_of(f.border.begin(), f.border.end(),
                             [&](const Chord& c) { return tar.Contains(c); });
    VertexMask fv = 0;
    for (int v : f.vertices) fv |= VertexMask{1} << v;
    tar_only.ForEach([&](int u) {
      const Chord& c = table.At(u);
      if (((fv >> c.a) & 1U) && ((fv >> c.b) & 1U)) clean = false;
    });
    if (!clean) continue;
    int first = -1;
    for (const Chord& c : f.border) {
      int i = table.Index(c);
      if (!loose.Test(i)) continue;
      if (first < 0) {
        first = i;
      } else {
        parent[find(i)] = find(first);
      }
    }
  }
  std::vector<DualTreePath> out;
  std::unordered_map<int, int> slot;
  loose.ForEach([&](int i) {
    int root = find(i);
    auto [it, fresh] = slot.emplace(root, static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    out[it->second].happy.push_back(table.At(i));
  });
  return out;
}

FptResult FptDistanceUnrestricted(const Tree& in, const Tree& tar, int k,
                                  const FptOptions& opts) {
  RequireSameN(in, tar, k);
  if (opts.conjecture_mode) return Decomposed(in, tar, k, FlipKind::kUnrestricted, 1.0, opts);
  FptResult res;
  const int t = Minus(in.mask(), tar.mask()).Count();
  if (t > k) return res;
  ReducedInstance r = Contract(in, tar);
  const int m = r.m();
  res.reduced_points = m;
  const ChordTable& table = ChordTable::For(m);
  const ChordSet happy = r.in.mask() & r.tar.mask();
  std::vector<DualTreePath> paths = DualTreePaths(r.in, r.tar);
  const int p = static_cast<int>(paths.size());
  FLIPSPAN_CHECK(p < 20, "too many dual tree paths");

  // Each happy edge flipped costs a removal and a re-addition, so a
  // sequence of length L flips at most (L - t) / 2 of them. A path is
  // flipped entirely or not at all. Only maximal subsets within the budget
  // need a search: the others are restrictions of one of them.
  std::vector<int> weight(std::size_t{1} << p, 0);
  std::vector<ChordSet> thawed(weight.size());
  for (std::size_t s = 1; s < weight.size(); ++s) {
    int low = std::countr_zero(s);
    weight[s] = weight[s & (s - 1)] + static_cast<int>(paths[low].happy.size());
    thawed[s] = thawed[s & (s - 1)];
    for (const Chord& c : paths[low].happy) thawed[s].Set(table.Index(c));
  }
  std::unordered_map<std::size_t, BoundedSearch> searches;
  const ChordSet all = AllChords(m);
  std::vector<FlipStep> steps;
  for (int limit = t; limit <= k; ++limit) {
    const int cap = limit - t;
    for (std::size_t s = 0; s < weight.size(); ++s) {
      if (2 * weight[s] > cap) continue;
      bool maximal = true;
      for (int j = 0; j < p && maximal; ++j) {
        if (!((s >> j) & 1U) && 2 * weight[s | (std::size_t{1} << j)] <= cap) maximal = false;
      }
      if (!maximal) continue;
      auto it = searches.find(s);
      if (it == searches.end()) {
        it = searches
                 .emplace(s, BoundedSearch(m, FlipKind::kUnrestricted, r.tar.mask(),
                                           Minus(happy, thawed[s]), all,
                                           &res.nodes_expanded, opts.node_budget))
                 .first;
      }
      if (it->second.Run(r.in.mask(), limit, &steps)) {
        FlipSequence lifted = r.Lift(FlipSequence{r.in, steps}, in);
        res.sequence = Validated(in, tar, lifted.steps);
        res.found = true;
        return res;
      }
    }
  }
  return res;
}

FptResult FptDistanceCompatible(const Tree& in, const Tree& tar, int k,
                                double epsilon, const FptOptions& opts) {
  RequireSameN(in, tar, k);
  if (!(epsilon > 0)) throw InvalidInput("fpt: epsilon must be positive");
  return Decomposed(in, tar, k, FlipKind::kCompatible, epsilon, opts);
}

FptResult FptDistance(const Tree& in, const Tree& tar, FlipKind kind, int k,
                      const FptOptions& opts, double epsilon) {
  switch (kind) {
    case FlipKind::kUnrestricted:
      return FptDistanceUnrestricted(in, tar, k, opts);
    case FlipKind::kCompatible:
      return FptDistanceCompatible(in, tar, k, epsilon, opts);
    default:
      throw InvalidInput("fpt: only unrestricted and compatible flips are supported");
  }
}

}  // namespace flipspan
