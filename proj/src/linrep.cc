#include "flipspan/linrep.h"

#include <algorithm>
#include <queue>
#include <sstream>

namespace flipspan {

Chord Relabel(const Chord& c, int n, int shift) {
  auto f = [&](int v) { return ((v - 1 - shift) % n + n) % n + 1; };
  return Chord(f(c.a), f(c.b));
}

Tree Relabel(const Tree& t, int shift) {
  std::vector<Chord> edges;
  for (const Chord& c : t.Edges()) edges.push_back(Relabel(c, t.n(), shift));
  return Tree::FromEdges(t.n(), edges);
}

std::optional<int> RelabelForCommonHullGap(const Tree& in, const Tree& tar) {
  FLIPSPAN_CHECK(in.n() == tar.n(), "trees on different point sets");
  const int n = in.n();
  for (int g = 1; g <= n; ++g) {
    Chord h(g, g % n + 1);
    if (!in.Contains(h) && !tar.Contains(h)) return g % n;
  }
  return std::nullopt;
}

std::string ToString(EdgeClass c) {
  switch (c) {
    case EdgeClass::kShort:
      return "short";
    case EdgeClass::kNear:
      return "near";
    case EdgeClass::kWide:
      return "wide";
  }
  return "?";
}

std::vector<Chord> GapBijection(const Tree& t) {
  const int n = t.n();
  std::vector<Chord> edges = t.Edges();
  std::vector<Chord> rho(n - 1);
  std::vector<bool> used(edges.size(), false);
  for (int g = 1; g < n; ++g) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (!CoversGap(edges[i], g)) continue;
      if (best >= 0) {
        FLIPSPAN_CHECK(edges[i].Length() != edges[best].Length(),
                       "two shortest covering edges for one gap");
      }
      if (best < 0 || edges[i].Length() < edges[best].Length()) best = i;
    }
    FLIPSPAN_CHECK(best >= 0, "gap not covered by any edge");
    FLIPSPAN_CHECK(!used[best], "gap bijection is not injective");
    used[best] = true;
    rho[g - 1] = edges[best];
  }
  return rho;
}

int GapOf(const std::vector<Chord>& rho, const Chord& e) {
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (rho[i] == e) return static_cast<int>(i) + 1;
  FLIPSPAN_CHECK(false, "edge has no gap");
  return 0;
}

EdgeClass Classify(const Chord& e, int gap) {
  int shared = (e.Has(gap) ? 1 : 0) + (e.Has(gap + 1) ? 1 : 0);
  if (shared == 2) return EdgeClass::kShort;
  return shared == 1 ? EdgeClass::kNear : EdgeClass::kWide;
}

int UncoveredCount(const Tree& t) {
  auto edges = t.Edges();
  int k = 0;
  for (const Chord& e : edges) {
    bool covered = std::any_of(edges.begin(), edges.end(), [&](const Chord& f) {
      return !(f == e) && Covers(f, e);
    });
    if (!covered) ++k;
  }
  return k;
}

SnwClasses ClassifySnw(const Tree& t) {
  SnwClasses out;
  auto rho = GapBijection(t);
  for (int g = 1; g < t.n(); ++g) {
    switch (Classify(rho[g - 1], g)) {
      case EdgeClass::kShort:
        out.shorts.push_back(rho[g - 1]);
        break;
      case EdgeClass::kNear:
        out.nears.push_back(rho[g - 1]);
        break;
      case EdgeClass::kWide:
        out.wides.push_back(rho[g - 1]);
        break;
    }
  }
  out.uncovered = UncoveredCount(t);
  const int s = static_cast<int>(out.shorts.size());
  const int w = static_cast<int>(out.wides.size());
  FLIPSPAN_CHECK(s >= out.uncovered, "fewer short edges than uncovered edges");
  FLIPSPAN_CHECK(w <= s - out.uncovered, "too many wide edges");
  return out;
}

std::string ToString(PairClass c) {
  switch (c) {
    case PairClass::kEqual:
      return "eq";
    case PairClass::kRest:
      return "R";
    case PairClass::kAbove:
      return "A";
    case PairClass::kBelow:
      return "B";
    case PairClass::kCrossing:
      return "C";
  }
  return "?";
}

std::vector<GapPair> PairGapwise(const Tree& in, const Tree& tar) {
  FLIPSPAN_CHECK(in.n() == tar.n(), "trees on different point sets");
  auto rho_in = GapBijection(in);
  auto rho_tar = GapBijection(tar);
  std::vector<GapPair> out;
  for (int g = 1; g < in.n(); ++g) {
    GapPair p;
    p.gap = g;
    p.e = rho_in[g - 1];
    p.e_tar = rho_tar[g - 1];
    p.e_class = Classify(p.e, g);
    p.e_tar_class = Classify(p.e_tar, g);
    if (p.e == p.e_tar) {
      p.pair_class = PairClass::kEqual;
    } else if (p.e_class != EdgeClass::kNear || p.e_tar_class != EdgeClass::kNear) {
      p.pair_class = PairClass::kRest;
    } else if (Crosses(p.e, p.e_tar)) {
      p.pair_class = PairClass::kCrossing;
    } else {
      FLIPSPAN_CHECK(p.e.Has(p.e_tar.a) || p.e.Has(p.e_tar.b),
                     "near pair neither crosses nor shares a vertex");
      FLIPSPAN_CHECK(p.e.Length() != p.e_tar.Length(),
                     "distinct near pair of equal length sharing a vertex");
      p.pair_class = p.e.Length() > p.e_tar.Length() ? PairClass::kAbove
                                                      : PairClass::kBelow;
    }
    out.push_back(p);
  }
  return out;
}

std::string DumpPairingTsv(const std::vector<GapPair>& pairs) {
  std::ostringstream os;
  os << "gap\te\tclass_e\te_tar\tclass_e_tar\tpair\n";
  for (const GapPair& p : pairs) {
    os << p.gap << '\t' << ToString(p.e) << '\t' << ToString(p.e_class) << '\t'
       << ToString(p.e_tar) << '\t' << ToString(p.e_tar_class) << '\t'
       << ToString(p.pair_class) << '\n';
  }
  return os.str();
}

bool Conflicts(const ConflictNode& from, const ConflictNode& to,
               ConflictMode mode) {
  if (Crosses(from.e, to.e_tar)) return true;
  if (mode == ConflictMode::kCrossingOnly) return false;
  if (Covers(to.e_tar, from.e) && Covers(from.e, to.gap)) return true;
  return Covers(from.e, to.e_tar) && Covers(to.e_tar, from.gap);
}

ConflictGraph::ConflictGraph(std::vector<ConflictNode> nodes, ConflictMode mode)
    : nodes_(std::move(nodes)), out_(nodes_.size()) {
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (i != j && Conflicts(nodes_[i], nodes_[j], mode)) out_[i].push_back(j);
    }
  }
}

bool ConflictGraph::HasEdge(int i, int j) const {
  return std::find(out_[i].begin(), out_[i].end(), j) != out_[i].end();
}

std::vector<int> ConflictGraph::TopologicalOrder() const {
  std::vector<int> indeg(size(), 0);
  for (int i = 0; i < size(); ++i)
    for (int j : out_[i]) ++indeg[j];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < size(); ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<int> order;
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j : out_[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (static_cast<int>(order.size()) != size()) {
    throw CycleDetected("conflict graph has a directed cycle");
  }
  return order;
}

std::optional<int> TopmostRoot(const std::vector<ConflictNode>& nodes,
                               const std::vector<bool>& alive) {
  const int m = static_cast<int>(nodes.size());
  for (int i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      if (j == i || !alive[j]) continue;
      const ConflictNode& a = nodes[i];
      const ConflictNode& b = nodes[j];
      if (Covers(b.e, a.e)) ok = false;
      if (Covers(a.e_tar, b.e_tar)) ok = false;
      if (Covers(a.e_tar, b.e) || Crosses(a.e_tar, b.e)) ok = false;
    }
    if (ok) return i;
  }
  return std::nullopt;
}

}  // namespace flipspan
