#ifndef FLIPSPAN_FPT_H_
#define FLIPSPAN_FPT_H_

// Exact flip distance for small k: shrink the instance, freeze what no
// shortest sequence touches, then search by iterative deepening.

#include <cstdint>
#include <optional>
#include <vector>

#include "flipspan/convex.h"
#include "flipspan/flip.h"
#include "flipspan/oracle.h"

namespace flipspan {

// Repeatedly removes an unmarked hull vertex whose only edges, in both
// trees, are happy hull edges: a leaf hangs off it, or it is the interior
// of a hull path (its two hull edges become one). Stops at 3 vertices.
struct ReducedInstance {
  Tree in;   // on m vertices
  Tree tar;
  int n = 0;  // original point count
  // reduced_label[v] for original v in 1..n; 0 when absorbed.
  std::vector<int> reduced_label;
  // original_label[r] for reduced r in 1..m.
  std::vector<int> original_label;
  VertexMask marked = 0;  // original labels

  int m() const { return in.n(); }
  Chord Lift(const Chord& c) const {
    return Chord(original_label[c.a], original_label[c.b]);
  }
  // Maps a sequence on the reduced trees back to the original ones.
  FlipSequence Lift(const FlipSequence& reduced, const Tree& original_in) const;
};

ReducedInstance Contract(const Tree& in, const Tree& tar);

// Happy hull edges, and happy diagonals with one side free of unhappy
// edges of either tree.
ChordSet GoodHappyEdges(const Tree& in, const Tree& tar);

// Happy edges that are not good, grouped into the chains of the dual tree
// of `in` that join faces holding unhappy edges. Two such edges share a
// group when they border a common face whose own edges are all happy.
struct DualTreePath {
  std::vector<Chord> happy;  // l = happy.size()
};
std::vector<DualTreePath> DualTreePaths(const Tree& in, const Tree& tar);

struct FptOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  // Unrestricted only: also cut along every happy edge, which is exact only
  // if no shortest unrestricted sequence flips a happy edge (open).
  bool conjecture_mode = false;
};

struct FptResult {
  bool found = false;
  // Shortest under the search restrictions, so of length distance when
  // found.
  FlipSequence sequence;
  std::int64_t nodes_expanded = 0;
  int reduced_points = 0;  // largest instance searched
  int length() const { return found ? sequence.size() : -1; }
};

// Sequence of length <= k or none. Throws BudgetExceeded past the node cap.
FptResult FptDistanceUnrestricted(const Tree& in, const Tree& tar, int k,
                                  const FptOptions& opts = {});
// epsilon picks the pre-solve threshold ceil(1/epsilon) on unhappy edges
// per component. It changes the order of work, not the answer.
FptResult FptDistanceCompatible(const Tree& in, const Tree& tar, int k,
                                double epsilon = 1.0,
                                const FptOptions& opts = {});
// Dispatch on kind (unrestricted or compatible).
FptResult FptDistance(const Tree& in, const Tree& tar, FlipKind kind, int k,
                      const FptOptions& opts = {}, double epsilon = 1.0);

}  // namespace flipspan

#endif  // FLIPSPAN_FPT_H_
