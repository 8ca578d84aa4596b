#ifndef FLIPSPAN_LINREP_H_
#define FLIPSPAN_LINREP_H_

// Linear representation: the n-gon is cut open between v_n and v_1 and the
// vertices are read left to right as v_1..v_n. Gap i is the spine segment
// (v_i, v_{i+1}), 1 <= i <= n-1. All functions here treat the labels of the
// given trees as the linear order; use RelabelForCommonHullGap first when the
// cut has to sit at a particular hull position.

#include <optional>
#include <string>
#include <vector>

#include "flipspan/convex.h"

namespace flipspan {

class CycleDetected : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

// Edge (a,b) covers vertex v iff a <= v <= b, and covers chord c iff it
// covers both endpoints.
inline bool Covers(const Chord& e, int v) { return e.a <= v && v <= e.b; }
inline bool Covers(const Chord& e, const Chord& c) {
  return e.a <= c.a && c.b <= e.b;
}
inline bool CoversGap(const Chord& e, int gap) {
  return e.a <= gap && gap + 1 <= e.b;
}

// Cyclic relabeling v -> ((v - 1 - shift) mod n) + 1.
Chord Relabel(const Chord& c, int n, int shift);
Tree Relabel(const Tree& t, int shift);
inline int UndoShift(int n, int shift) { return (n - shift) % n; }

// Shift that moves a hull pair missing from both trees to (n,1); the
// smallest such pair in label order is used. nullopt when the union of the
// trees contains every hull edge.
std::optional<int> RelabelForCommonHullGap(const Tree& in, const Tree& tar);

enum class EdgeClass { kShort, kNear, kWide };
std::string ToString(EdgeClass c);

// rho[i-1] = shortest edge covering gap i.
std::vector<Chord> GapBijection(const Tree& t);
// Inverse: gap index of every edge.
int GapOf(const std::vector<Chord>& rho, const Chord& e);

EdgeClass Classify(const Chord& e, int gap);

struct SnwClasses {
  std::vector<Chord> shorts;
  std::vector<Chord> nears;
  std::vector<Chord> wides;
  int uncovered = 0;  // edges not covered by another edge
};

// Also asserts |S| >= k and |W| <= |S| - k for k = uncovered.
SnwClasses ClassifySnw(const Tree& t);
int UncoveredCount(const Tree& t);

enum class PairClass { kEqual, kRest, kAbove, kBelow, kCrossing };
std::string ToString(PairClass c);

struct GapPair {
  int gap = 0;
  Chord e;       // rho_in(g)
  Chord e_tar;   // rho_tar(g)
  EdgeClass e_class = EdgeClass::kShort;
  EdgeClass e_tar_class = EdgeClass::kShort;
  PairClass pair_class = PairClass::kEqual;

  Chord GapChord() const { return Chord(gap, gap + 1); }
};

std::vector<GapPair> PairGapwise(const Tree& in, const Tree& tar);
// Per-gap TSV with a header row.
std::string DumpPairingTsv(const std::vector<GapPair>& pairs);

// A node of a conflict graph: an initial edge, its target edge, and the gap
// the pair is charged to.
struct ConflictNode {
  Chord e;
  Chord e_tar;
  Chord gap;
};

inline ConflictNode ToConflictNode(const GapPair& p) {
  return {p.e, p.e_tar, p.GapChord()};
}

enum class ConflictMode { kCrossingOnly, kFull };

// Edge i -> j means pair j cannot be flipped directly while e_i is present.
class ConflictGraph {
 public:
  ConflictGraph(std::vector<ConflictNode> nodes, ConflictMode mode);

  int size() const { return static_cast<int>(nodes_.size()); }
  const ConflictNode& node(int i) const { return nodes_[i]; }
  const std::vector<int>& Out(int i) const { return out_[i]; }
  bool HasEdge(int i, int j) const;

  // Sources first, ties broken by node index. Throws CycleDetected.
  std::vector<int> TopologicalOrder() const;

 private:
  std::vector<ConflictNode> nodes_;
  std::vector<std::vector<int>> out_;
};

bool Conflicts(const ConflictNode& from, const ConflictNode& to,
               ConflictMode mode);

// Among the nodes with alive[i], the smallest index i such that e_i is not
// covered by another alive e_j, e_tar_i covers no other alive e_tar_j, and
// e_tar_i neither covers nor crosses another alive e_j.
std::optional<int> TopmostRoot(const std::vector<ConflictNode>& nodes,
                               const std::vector<bool>& alive);

}  // namespace flipspan

#endif  // FLIPSPAN_LINREP_H_
