#include "flipspan/oracle.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace flipspan {

namespace {

bool IsSymmetricKind(FlipKind k) { return k != FlipKind::kSlide; }

std::uint64_t SatAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

FlipSequence SequenceFromCodes(int n, const std::vector<ChordSet>& path,
                               FlipKind kind) {
  std::vector<Tree> trees;
  trees.reserve(path.size());
  for (const auto& c : path) trees.push_back(Tree::FromMaskUnchecked(n, c));
  return {trees.front(), StepsBetween(trees, kind)};
}

// Trees u with a `kind` flip u -> t. For symmetric kinds these are the
// neighbours of t; for slides each unrestricted neighbour is re-checked.
template <typename F>
void ForEachPredecessor(const Tree& t, FlipKind kind, F&& f) {
  if (IsSymmetricKind(kind)) {
    ForEachNeighbor(t, kind, f);
    return;
  }
  const ChordTable& table = ChordTable::For(t.n());
  internal::ForEachFlip(t, FlipKind::kCompatible, [&](int ri, int ai) {
    Tree u = t.WithSwap(table.At(ri), table.At(ai));
    if (TryClassifyFlip(u, table.At(ai), table.At(ri)) == FlipKind::kSlide) {
      f(u.mask());
    }
  });
}

}  // namespace

FlipGraph FlipGraph::Build(int n, FlipKind kind, std::int64_t node_budget) {
  CheckPointCount(n);
  FlipGraph g;
  g.n_ = n;
  g.kind_ = kind;
  EnumerateTrees(n, [&](const Tree& t) {
    if (static_cast<std::int64_t>(g.nodes_.size()) >= node_budget) {
      throw BudgetExceeded("flip graph on " + std::to_string(n) +
                           " points exceeds node budget");
    }
    g.nodes_.push_back(t.mask());
  });
  // Enumeration order is canonical already; sort defensively anyway.
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.index_.reserve(g.nodes_.size() * 2);
  for (int i = 0; i < g.size(); ++i) g.index_.emplace(g.nodes_[i], i);
  g.offsets_.assign(g.nodes_.size() + 1, 0);
  for (int i = 0; i < g.size(); ++i) {
    Tree t = g.TreeAt(i);
    ForEachNeighbor(t, kind, [&](const ChordSet& m) {
      int j = g.IndexOf(m);
      FLIPSPAN_CHECK(j >= 0, "neighbour is not an enumerated tree");
      g.adj_.push_back(j);
    });
    g.offsets_[i + 1] = static_cast<std::int64_t>(g.adj_.size());
  }
  return g;
}

int FlipGraph::IndexOf(const ChordSet& code) const {
  auto it = index_.find(code);
  return it == index_.end() ? -1 : it->second;
}

bool FlipGraph::IsSymmetric() const {
  for (int i = 0; i < size(); ++i) {
    for (int j : Neighbors(i)) {
      auto back = Neighbors(j);
      if (std::find(back.begin(), back.end(), i) == back.end()) return false;
    }
  }
  return true;
}

bool FlipGraph::IsConnected() const {
  if (size() == 0) return true;
  auto d = BfsDistances(*this, 0);
  return std::none_of(d.begin(), d.end(),
                      [](std::uint8_t x) { return x == kUnreachable; });
}

std::vector<std::uint8_t> BfsDistances(const FlipGraph& g, int source) {
  std::vector<std::uint8_t> dist(g.size(), kUnreachable);
  std::vector<int> queue;
  queue.reserve(g.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.Neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      FLIPSPAN_CHECK(dist[u] + 1 < kUnreachable, "distance overflows uint8");
      dist[w] = static_cast<std::uint8_t>(dist[u] + 1);
      queue.push_back(w);
    }
  }
  return dist;
}

DistanceMatrix::DistanceMatrix(FlipGraph graph) : graph_(std::move(graph)) {
  const std::size_t n = graph_.size();
  dist_.resize(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    auto row = BfsDistances(graph_, static_cast<int>(s));
    std::copy(row.begin(), row.end(), dist_.begin() + s * n);
  }
}

int DistanceMatrix::Distance(const Tree& a, const Tree& b) const {
  int i = graph_.IndexOf(a);
  int j = graph_.IndexOf(b);
  if (i < 0 || j < 0 || a.n() != graph_.n() || b.n() != graph_.n()) {
    throw InvalidInput("tree is not on " + std::to_string(graph_.n()) + " points");
  }
  return At(i, j);
}

DistanceReport Distance(const Tree& from, const Tree& to, FlipKind kind,
                        std::int64_t node_budget) {
  if (from.n() != to.n()) throw InvalidInput("trees on different point sets");
  const int n = from.n();
  DistanceReport report;
  if (from == to) {
    report.witness = {from, {}};
    return report;
  }
  using Parents = std::unordered_map<ChordSet, ChordSet, ChordSetHash>;
  Parents fwd{{from.mask(), from.mask()}};
  Parents bwd{{to.mask(), to.mask()}};
  std::vector<ChordSet> ffront{from.mask()};
  std::vector<ChordSet> bfront{to.mask()};
  int fdepth = 0;
  int bdepth = 0;
  // Slides are directed, so only the forward side grows for them.
  const bool both = IsSymmetricKind(kind);

  auto budget_check = [&] {
    if (static_cast<std::int64_t>(fwd.size() + bwd.size()) > node_budget) {
      throw BudgetExceeded("distance search visited more than " +
                           std::to_string(node_budget) + " trees");
    }
  };

  std::optional<ChordSet> meet;
  int best = std::numeric_limits<int>::max();
  while (!meet) {
    bool grow_forward = !both || ffront.size() <= bfront.size();
    std::vector<ChordSet>& front = grow_forward ? ffront : bfront;
    Parents& mine = grow_forward ? fwd : bwd;
    Parents& other = grow_forward ? bwd : fwd;
    if (front.empty()) {
      throw InvalidInput("target is unreachable under " + ToString(kind));
    }
    std::vector<ChordSet> next;
    for (const ChordSet& c : front) {
      Tree t = Tree::FromMaskUnchecked(n, c);
      ForEachNeighbor(t, kind, [&](const ChordSet& m) {
        if (mine.contains(m)) return;
        mine.emplace(m, c);
        next.push_back(m);
      });
      budget_check();
    }
    if (grow_forward) {
      ++fdepth;
    } else {
      ++bdepth;
    }
    // Everything in `other` has depth <= its frontier depth; the backward
    // side is only ever a single node for slides.
    for (const ChordSet& m : next) {
      if (!other.contains(m)) continue;
      int od = 0;
      for (ChordSet x = m; !(other.at(x) == x); x = other.at(x)) ++od;
      int total = (grow_forward ? fdepth : bdepth) + od;
      if (total < best) {
        best = total;
        meet = m;
      }
    }
    front = std::move(next);
  }

  std::vector<ChordSet> path;
  for (ChordSet x = *meet;; x = fwd.at(x)) {
    path.push_back(x);
    if (fwd.at(x) == x) break;
  }
  std::reverse(path.begin(), path.end());
  for (ChordSet x = *meet; !(bwd.at(x) == x);) {
    x = bwd.at(x);
    path.push_back(x);
  }
  report.distance = static_cast<int>(path.size()) - 1;
  FLIPSPAN_CHECK(report.distance == best, "reconstructed path has wrong length");
  report.witness = SequenceFromCodes(n, path, kind);
  return report;
}

DiameterRadius ComputeDiameterRadius(const DistanceMatrix& m) {
  const FlipGraph& g = m.graph();
  DiameterRadius out;
  out.radius = std::numeric_limits<int>::max();
  out.diameter = -1;
  for (int i = 0; i < g.size(); ++i) {
    int ecc = 0;
    int far = i;
    for (int j = 0; j < g.size(); ++j) {
      int d = m.At(i, j);
      FLIPSPAN_CHECK(d != kUnreachable, "flip graph is not strongly connected");
      if (d > ecc) {
        ecc = d;
        far = j;
      }
    }
    if (ecc > out.diameter) {
      out.diameter = ecc;
      out.extremal_from = g.TreeAt(i);
      out.extremal_to = g.TreeAt(far);
    }
    if (ecc < out.radius) {
      out.radius = ecc;
      out.center = g.TreeAt(i);
    }
  }
  return out;
}

DiameterRadius ComputeDiameterRadius(int n, FlipKind kind) {
  return ComputeDiameterRadius(DistanceMatrix::Compute(n, kind));
}

std::vector<FlipSequence> AllGeodesics(const Tree& from, const Tree& to,
                                       FlipKind kind, std::uint64_t cap) {
  if (from.n() != to.n()) throw InvalidInput("trees on different point sets");
  const int n = from.n();
  const int d = Distance(from, to, kind).distance;

  // Distance to `to` for every tree within d of it (reverse BFS).
  std::unordered_map<ChordSet, int, ChordSetHash> to_target{{to.mask(), 0}};
  std::vector<ChordSet> layer{to.mask()};
  for (int depth = 1; depth <= d; ++depth) {
    std::vector<ChordSet> next;
    for (const ChordSet& c : layer) {
      ForEachPredecessor(Tree::FromMaskUnchecked(n, c), kind,
                         [&](const ChordSet& m) {
                           if (to_target.emplace(m, depth).second) {
                             next.push_back(m);
                           }
                         });
    }
    layer = std::move(next);
  }

  std::vector<FlipSequence> out;
  std::vector<ChordSet> path{from.mask()};
  auto dfs = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      if (out.size() >= cap) {
        throw BudgetExceeded("more than " + std::to_string(cap) + " geodesics");
      }
      out.push_back(SequenceFromCodes(n, path, kind));
      return;
    }
    Tree cur = Tree::FromMaskUnchecked(n, path.back());
    ForEachNeighbor(cur, kind, [&](const ChordSet& m) {
      auto it = to_target.find(m);
      if (it == to_target.end() || it->second != remaining - 1) return;
      path.push_back(m);
      self(self, remaining - 1);
      path.pop_back();
    });
  };
  dfs(dfs, d);
  return out;
}

GeodesicSummary SummarizeGeodesics(const DistanceMatrix& m, int from, int to) {
  const FlipGraph& g = m.graph();
  const ChordSet happy = g.Node(from) & g.Node(to);
  GeodesicSummary out;
  out.distance = m.At(from, to);
  FLIPSPAN_CHECK(out.distance != kUnreachable, "target unreachable");

  // Layered walk over the geodesic DAG. For each node: number of geodesic
  // prefixes reaching it, and whether some prefix avoids happy removals.
  struct Info {
    std::uint64_t count = 0;
    bool clean = false;
  };
  std::unordered_map<int, Info> info{{from, {1, true}}};
  std::vector<int> layer{from};
  for (int step = 0; step < out.distance; ++step) {
    std::vector<int> next;
    for (int u : layer) {
      const Info iu = info.at(u);
      const int du = m.At(u, to);
      for (int w : g.Neighbors(u)) {
        if (m.At(w, to) != du - 1) continue;
        bool removes_happy = false;
        Minus(g.Node(u), g.Node(w)).ForEach([&](int ri) {
          if (happy.Test(ri)) removes_happy = true;
        });
        if (removes_happy) out.some_geodesic_removes_happy = true;
        auto [it, fresh] = info.try_emplace(w);
        if (fresh) next.push_back(w);
        it->second.count = SatAdd(it->second.count, iu.count);
        it->second.clean = it->second.clean || (iu.clean && !removes_happy);
      }
    }
    layer = std::move(next);
  }
  const Info& last = info.at(to);
  out.geodesic_count = last.count;
  out.every_geodesic_removes_happy = !last.clean;
  return out;
}

std::optional<std::pair<Tree, Tree>> FindHappyViolation(const DistanceMatrix& m) {
  const FlipGraph& g = m.graph();
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i == j || !(g.Node(i) & g.Node(j)).Any()) continue;
      if (SummarizeGeodesics(m, i, j).every_geodesic_removes_happy) {
        return std::make_pair(g.TreeAt(i), g.TreeAt(j));
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Tree, Tree>> FindHappyViolation(int n, FlipKind kind) {
  return FindHappyViolation(DistanceMatrix::Compute(n, kind));
}

std::string ToDot(const FlipGraph& g) {
  const bool directed = !IsSymmetricKind(g.kind());
  std::ostringstream os;
  os << (directed ? "digraph" : "graph") << " flip_" << g.n() << "_"
     << ToString(g.kind()) << " {\n";
  for (int i = 0; i < g.size(); ++i) {
    os << "  t" << i << " [label=\"" << g.Node(i).Hex() << "\"];\n";
  }
  const char* arrow = directed ? " -> " : " -- ";
  for (int i = 0; i < g.size(); ++i) {
    for (int j : g.Neighbors(i)) {
      if (!directed && j < i) continue;
      os << "  t" << i << arrow << "t" << j << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace flipspan
