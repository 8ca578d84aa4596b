#ifndef FLIPSPAN_ORACLE_H_
#define FLIPSPAN_ORACLE_H_

// Exhaustive ground truth: flip graphs, BFS distances, eccentricities and
// geodesic structure. Everything constructive in this library is checked
// against these routines at small n.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flipspan/convex.h"
#include "flipspan/flip.h"

namespace flipspan {

// All-pairs routines are meant for n <= 9; the per-pair BFS has no fixed
// limit other than the node budget.
inline constexpr std::int64_t kDefaultNodeBudget = 20'000'000;

class FlipGraph {
 public:
  static FlipGraph Build(int n, FlipKind kind,
                         std::int64_t node_budget = kDefaultNodeBudget);

  int n() const { return n_; }
  FlipKind kind() const { return kind_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const ChordSet& Node(int i) const { return nodes_[i]; }
  Tree TreeAt(int i) const { return Tree::FromMaskUnchecked(n_, nodes_[i]); }
  // -1 if absent.
  int IndexOf(const ChordSet& code) const;
  int IndexOf(const Tree& t) const { return IndexOf(t.code()); }
  std::span<const int> Neighbors(int i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::int64_t EdgeCount() const { return static_cast<std::int64_t>(adj_.size()); }
  bool IsSymmetric() const;
  bool IsConnected() const;

 private:
  int n_ = 0;
  FlipKind kind_ = FlipKind::kUnrestricted;
  std::vector<ChordSet> nodes_;
  std::unordered_map<ChordSet, int, ChordSetHash> index_;
  std::vector<std::int64_t> offsets_;
  std::vector<int> adj_;
};

inline constexpr std::uint8_t kUnreachable = 255;

std::vector<std::uint8_t> BfsDistances(const FlipGraph& g, int source);

// Dense all-pairs distance table, row = source.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(FlipGraph graph);
  static DistanceMatrix Compute(int n, FlipKind kind) {
    return DistanceMatrix(FlipGraph::Build(n, kind));
  }

  const FlipGraph& graph() const { return graph_; }
  int At(int from, int to) const {
    return dist_[static_cast<std::size_t>(from) * graph_.size() + to];
  }
  int Distance(const Tree& a, const Tree& b) const;

 private:
  FlipGraph graph_;
  std::vector<std::uint8_t> dist_;
};

struct DistanceReport {
  int distance = 0;
  FlipSequence witness;
  std::optional<std::uint64_t> geodesic_count;
};

// Exact distance by bidirectional BFS (forward only for slides), regenerating
// neighbours on demand. Throws BudgetExceeded past node_budget visited trees.
DistanceReport Distance(const Tree& from, const Tree& to, FlipKind kind,
                        std::int64_t node_budget = kDefaultNodeBudget);

struct DiameterRadius {
  int diameter = 0;
  int radius = 0;
  Tree extremal_from;
  Tree extremal_to;
  Tree center;
};

DiameterRadius ComputeDiameterRadius(const DistanceMatrix& m);
DiameterRadius ComputeDiameterRadius(int n, FlipKind kind);

inline constexpr std::uint64_t kDefaultGeodesicCap = 1'000'000;

// Every shortest sequence from `from` to `to`. Throws BudgetExceeded once more
// than `cap` sequences exist.
std::vector<FlipSequence> AllGeodesics(const Tree& from, const Tree& to,
                                       FlipKind kind,
                                       std::uint64_t cap = kDefaultGeodesicCap);

// Summary of the geodesic subgraph between two trees, relative to their
// common ("happy") edges.
struct GeodesicSummary {
  int distance = 0;
  std::uint64_t geodesic_count = 0;   // saturates at UINT64_MAX
  bool some_geodesic_removes_happy = false;
  bool every_geodesic_removes_happy = false;
};

// Walks only trees on shortest paths, using the table for both directions.
GeodesicSummary SummarizeGeodesics(const DistanceMatrix& m, int from, int to);

// Smallest pair in canonical pair order where every geodesic removes a
// common edge.
std::optional<std::pair<Tree, Tree>> FindHappyViolation(const DistanceMatrix& m);
std::optional<std::pair<Tree, Tree>> FindHappyViolation(int n, FlipKind kind);

// Graphviz rendering; node label is the canonical code in hex.
std::string ToDot(const FlipGraph& g);

}  // namespace flipspan

#endif  // FLIPSPAN_ORACLE_H_
