#include "flipspan/convex.h"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <mutex>
#include <numeric>

namespace flipspan {

void CheckPointCount(int n) {
  if (n < kMinPoints || n > kMaxPoints) {
    throw InvalidInput("point count " + std::to_string(n) +
                       " outside supported range [3, 23]");
  }
}

Chord::Chord(int u, int v) {
  if (u == v) throw InvalidInput("chord endpoints coincide: " + std::to_string(u));
  a = std::min(u, v);
  b = std::max(u, v);
}

std::string ToString(const Chord& c) {
  return "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

std::string ChordSet::Hex() const {
  std::string out;
  char buf[17];
  bool leading = true;
  for (int i = kWords - 1; i >= 0; --i) {
    if (leading && w_[i] == 0 && i > 0) continue;
    if (leading) {
      std::snprintf(buf, sizeof(buf), "%llx",
                    static_cast<unsigned long long>(w_[i]));
      leading = false;
    } else {
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(w_[i]));
    }
    out += buf;
  }
  return out;
}

ChordTable::ChordTable(int n) : n_(n) {
  for (auto& row : index_) row.fill(-1);
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      index_[a][b] = index_[b][a] = static_cast<int>(chords_.size());
      chords_.emplace_back(a, b);
    }
  }
  crossing_.resize(chords_.size());
  for (int i = 0; i < size(); ++i) {
    const Chord& c = chords_[i];
    incident_[c.a].Set(i);
    incident_[c.b].Set(i);
    if (IsHullEdge(c, n)) hull_.Set(i);
    for (int j = 0; j < size(); ++j) {
      if (Crosses(c, chords_[j])) crossing_[i].Set(j);
    }
  }
}

const ChordTable& ChordTable::For(int n) {
  CheckPointCount(n);
  static std::array<std::unique_ptr<ChordTable>, kMaxPoints + 1> tables;
  static std::array<std::once_flag, kMaxPoints + 1> flags;
  std::call_once(flags[n], [n] { tables[n].reset(new ChordTable(n)); });
  return *tables[n];
}

void CheckChord(const Chord& c, int n) {
  if (c.a < 1 || c.b > n || c.a >= c.b) {
    throw InvalidInput("chord " + ToString(c) + " invalid for n=" +
                       std::to_string(n));
  }
}

bool Crosses(const Chord& e, const Chord& f) {
  if (e.Has(f.a) || e.Has(f.b)) return false;
  bool in_a = e.a < f.a && f.a < e.b;
  bool in_b = e.a < f.b && f.b < e.b;
  return in_a != in_b;
}

bool IsHullEdge(const Chord& e, int n) {
  return e.b - e.a == 1 || (e.a == 1 && e.b == n);
}

namespace {

// Union-find over at most kMaxPoints labels.
struct Dsu {
  std::array<int, kMaxPoints + 1> parent;
  Dsu() { std::iota(parent.begin(), parent.end(), 0); }
  int Find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool Unite(int x, int y) {
    x = Find(x);
    y = Find(y);
    if (x == y) return false;
    parent[x] = y;
    return true;
  }
};

}  // namespace

Tree Tree::FromEdges(int n, const std::vector<Chord>& edges) {
  TreeValidation v = ValidateTree(edges, n);
  if (!v.ok()) throw InvalidInput(v.defect->Describe());
  return *v.tree;
}

Tree Tree::FromMaskUnchecked(int n, const ChordSet& mask) { return Tree(n, mask); }

Tree Tree::HullPath(int n) {
  std::vector<Chord> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return FromEdges(n, e);
}

Tree Tree::Star(int n, int center) {
  std::vector<Chord> e;
  for (int v = 1; v <= n; ++v)
    if (v != center) e.emplace_back(center, v);
  return FromEdges(n, e);
}

std::vector<Chord> Tree::Edges() const {
  const ChordTable& t = ChordTable::For(n_);
  std::vector<Chord> out;
  mask_.ForEach([&](int i) { out.push_back(t.At(i)); });
  return out;
}

bool Tree::Contains(const Chord& c) const {
  if (c.a < 1 || c.b > n_ || c.a >= c.b) return false;
  return mask_.Test(ChordTable::For(n_).Index(c));
}

int Tree::Degree(int v) const {
  return (mask_ & ChordTable::For(n_).Incident(v)).Count();
}

std::vector<int> Tree::Neighbors(int v) const {
  const ChordTable& t = ChordTable::For(n_);
  std::vector<int> out;
  (mask_ & t.Incident(v)).ForEach([&](int i) { out.push_back(t.At(i).Other(v)); });
  std::sort(out.begin(), out.end());
  return out;
}

Tree Tree::WithSwap(const Chord& removed, const Chord& added) const {
  const ChordTable& t = ChordTable::For(n_);
  ChordSet m = mask_;
  m.Reset(t.Index(removed));
  m.Set(t.Index(added));
  return Tree(n_, m);
}

VertexMask Tree::Component(int from, const Chord& cut) const {
  const ChordTable& t = ChordTable::For(n_);
  std::array<VertexMask, kMaxPoints + 1> adj{};
  mask_.ForEach([&](int i) {
    const Chord& c = t.At(i);
    if (c == cut) return;
    adj[c.a] |= VertexMask{1} << c.b;
    adj[c.b] |= VertexMask{1} << c.a;
  });
  VertexMask seen = VertexMask{1} << from;
  VertexMask frontier = seen;
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

std::vector<int> Tree::Path(int u, int v) const {
  std::vector<int> parent(n_ + 1, 0);
  std::vector<int> stack{u};
  parent[u] = u;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == v) break;
    for (int y : Neighbors(x)) {
      if (parent[y] == 0) {
        parent[y] = x;
        stack.push_back(y);
      }
    }
  }
  FLIPSPAN_CHECK(parent[v] != 0, "path endpoints not connected");
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::string ToString(const Tree& t) {
  std::string s = "{";
  bool first = true;
  for (const Chord& c : t.Edges()) {
    if (!first) s += ",";
    s += ToString(c);
    first = false;
  }
  return s + "}";
}

std::string TreeDefect::Describe() const {
  switch (kind) {
    case Kind::kWrongEdgeCount:
      return "WrongEdgeCount";
    case Kind::kCrossingPair:
      return "CrossingPair(" + ToString(*first) + "," + ToString(*second) + ")";
    case Kind::kDisconnected:
      return "Disconnected(component of 1 has " +
             std::to_string(std::popcount(component)) + " vertices)";
    case Kind::kBadLabel:
      return "BadLabel" + (first ? ToString(*first) : std::string());
  }
  return "unknown";
}

TreeValidation ValidateTree(const std::vector<Chord>& candidate, int n) {
  CheckPointCount(n);
  TreeValidation out;
  for (const Chord& c : candidate) {
    if (c.a < 1 || c.b > n || c.a >= c.b) {
      out.defect = TreeDefect{TreeDefect::Kind::kBadLabel, c, std::nullopt, 0};
      return out;
    }
  }
  std::vector<Chord> edges = candidate;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (static_cast<int>(edges.size()) != n - 1) {
    out.defect = TreeDefect{TreeDefect::Kind::kWrongEdgeCount, std::nullopt,
                            std::nullopt, 0};
    return out;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (Crosses(edges[i], edges[j])) {
        out.defect =
            TreeDefect{TreeDefect::Kind::kCrossingPair, edges[i], edges[j], 0};
        return out;
      }
    }
  }
  const ChordTable& t = ChordTable::For(n);
  ChordSet mask;
  for (const Chord& c : edges) mask.Set(t.Index(c));
  Tree tree = Tree::FromMaskUnchecked(n, mask);
  VertexMask comp = tree.Component(1, Chord());
  VertexMask all = ((VertexMask{1} << (n + 1)) - 1) & ~VertexMask{1};
  if (comp != all) {
    out.defect = TreeDefect{TreeDefect::Kind::kDisconnected, std::nullopt,
                            std::nullopt, comp};
    return out;
  }
  out.tree = tree;
  return out;
}

namespace {

struct Enumerator {
  int n;
  const ChordTable& table;
  const std::function<void(const Tree&)>& sink;
  ChordSet chosen;
  ChordSet blocked;  // chords crossing something chosen

  void Run(int next, int remaining, Dsu dsu) {
    if (remaining == 0) {
      sink(Tree::FromMaskUnchecked(n, chosen));
      return;
    }
    if (table.size() - next < remaining) return;
    for (int i = next; i < table.size(); ++i) {
      if (table.size() - i < remaining) return;
      if (blocked.Test(i)) continue;
      const Chord& c = table.At(i);
      Dsu d = dsu;
      if (!d.Unite(c.a, c.b)) continue;
      ChordSet saved = blocked;
      chosen.Set(i);
      blocked |= table.Crossing(i);
      Run(i + 1, remaining - 1, d);
      chosen.Reset(i);
      blocked = saved;
    }
  }
};

}  // namespace

void EnumerateTrees(int n, const std::function<void(const Tree&)>& sink) {
  CheckPointCount(n);
  if (n > kMaxEnumerationPoints) {
    throw InvalidInput("enumeration supports n <= " +
                       std::to_string(kMaxEnumerationPoints));
  }
  Enumerator e{n, ChordTable::For(n), sink, {}, {}};
  e.Run(0, n - 1, Dsu());
}

std::vector<Tree> AllTrees(int n) {
  std::vector<Tree> out;
  EnumerateTrees(n, [&](const Tree& t) { out.push_back(t); });
  return out;
}

std::int64_t CountTrees(int n) {
  std::int64_t c = 0;
  EnumerateTrees(n, [&](const Tree&) { ++c; });
  return c;
}

std::vector<std::vector<int>> CutRegions(int n,
                                         const std::vector<Chord>& cuts) {
  std::vector<std::vector<int>> regions(1);
  for (int v = 1; v <= n; ++v) regions[0].push_back(v);
  for (const Chord& c : cuts) {
    if (IsHullEdge(c, n)) continue;
    bool done = false;
    for (std::size_t r = 0; r < regions.size() && !done; ++r) {
      auto& reg = regions[r];
      auto ia = std::find(reg.begin(), reg.end(), c.a);
      auto ib = std::find(reg.begin(), reg.end(), c.b);
      if (ia == reg.end() || ib == reg.end()) continue;
      // Consecutive in the region's cyclic order: already a boundary.
      auto pa = ia - reg.begin();
      auto pb = ib - reg.begin();
      auto m = static_cast<std::ptrdiff_t>(reg.size());
      if (pb - pa == 1 || (pa == 0 && pb == m - 1)) continue;
      std::vector<int> inner(ia, ib + 1);
      std::vector<int> outer(reg.begin(), ia + 1);
      outer.insert(outer.end(), ib, reg.end());
      reg = std::move(outer);
      regions.push_back(std::move(inner));
      done = true;
    }
    FLIPSPAN_CHECK(done, "cut chord " + ToString(c) + " splits no region");
  }
  std::sort(regions.begin(), regions.end());
  return regions;
}

std::vector<Face> Faces(const Tree& t) {
  const int n = t.n();
  std::vector<Chord> edges = t.Edges();
  std::vector<Face> out;
  for (auto& verts : CutRegions(n, edges)) {
    Face f;
    f.vertices = verts;
    const int m = static_cast<int>(verts.size());
    int gaps = 0;
    for (int i = 0; i < m; ++i) {
      Chord c(verts[i], verts[(i + 1) % m]);
      bool is_edge = t.Contains(c);
      if (is_edge) f.border.push_back(c);
      if (IsHullEdge(c, n) && !is_edge) {
        f.hull_gap = c;
        ++gaps;
      }
    }
    FLIPSPAN_CHECK(gaps == 1, "face does not have exactly one hull non-edge");
    std::sort(f.border.begin(), f.border.end());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace flipspan
