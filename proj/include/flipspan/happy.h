#ifndef FLIPSPAN_HAPPY_H_
#define FLIPSPAN_HAPPY_H_

// Happy edges (edges of T_in ∩ T_tar) and parking edges (edges of a sequence
// in neither endpoint): sequence normalizations and exhaustive property
// checkers whose counterexamples can be replayed from scratch.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipspan/convex.h"
#include "flipspan/flip.h"
#include "flipspan/oracle.h"

namespace flipspan {

class PreconditionViolated : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

ChordSet HappyEdges(const Tree& in, const Tree& tar);

// Edges that occur in some tree of seq but in neither endpoint, sorted.
std::vector<Chord> ParkingEdges(const FlipSequence& seq);

// Takes the first removal of e and the next re-addition. If no step in
// between adds an edge crossing e, the detour is replaced by one that keeps
// e throughout and is at least one step shorter. Throws PreconditionViolated
// when e is never removed and re-added, or when a crossing edge is added.
FlipSequence NormalizeRemoveReadd(const FlipSequence& seq, const Chord& e);

// Rewrites a compatible sequence so that every parking edge is a hull edge,
// one non-hull occurrence at a time. Length and endpoints are unchanged.
// Throws InvalidInput if some step is not compatible.
//
// On a sequence that is not shortest, an occurrence can collapse (the hull
// edge that replaces f is also the edge that replaces it at the end). One
// step elsewhere is then split in two to restore the length; `padded`
// counts these. Only padded runs may remove a happy edge the input kept.
FlipSequence NormalizeParking(const FlipSequence& seq, int* padded = nullptr);

// Shortest sequence from `from` to `to` that never removes an edge of
// `frozen`; -1 if none. BFS regenerating neighbours, independent of
// FlipGraph.
int ConstrainedDistance(const Tree& from, const Tree& to, FlipKind kind,
                        const ChordSet& frozen,
                        std::int64_t node_budget = kDefaultNodeBudget);

enum class HappyProperty { kWeakHappy, kStrongHappy, kPerfectFlip, kParkingOnHull };
std::string ToString(HappyProperty p);

struct PropertyEvidence {
  Tree in;
  Tree tar;
  int distance = 0;
  // kStrongHappy: a geodesic that removes a happy edge.
  // kPerfectFlip: the single perfect flip that no geodesic starts with.
  FlipSequence witness;
  // kWeakHappy: shortest length keeping every happy edge (-1: impossible).
  // kPerfectFlip: distance from the tree after the perfect flip.
  int other = 0;
};

struct PropertyVerdict {
  HappyProperty property = HappyProperty::kStrongHappy;
  FlipKind kind = FlipKind::kCompatible;
  int n = 0;
  bool holds = true;  // HoldsExhaustively
  std::optional<PropertyEvidence> evidence;
  std::int64_t pairs_checked = 0;
};

// Weak: some geodesic keeps all happy edges. Strong: every geodesic does.
// Pairs are scanned in canonical order; the first failure is reported.
PropertyVerdict VerifyHappy(const DistanceMatrix& m, HappyProperty property);
PropertyVerdict VerifyHappy(int n, FlipKind kind, HappyProperty property);
PropertyVerdict VerifyStrongHappyCompatible(int n);

// A perfect flip removes an edge of in \ tar and adds one of tar \ in.
std::vector<FlipStep> PerfectFlips(const Tree& in, const Tree& tar, FlipKind kind);

PropertyVerdict CheckPerfectFlipProperty(const DistanceMatrix& m);
PropertyVerdict CheckPerfectFlipProperty(int n, FlipKind kind);
// Ascending n from 3; nullopt if the property holds up to max_n.
std::optional<PropertyVerdict> FindPerfectFlipViolation(FlipKind kind, int max_n);

// Recomputes the evidence with fresh BFS runs. Throws InvariantViolation
// with the first mismatch.
void ReplayEvidence(const PropertyVerdict& v);

// For each pair with at least one happy edge: the shortest sequence that
// removes a happy edge, minus the distance. That is how far the best
// happy-flipping sequence can be shortened.
struct HierarchyReport {
  FlipKind kind = FlipKind::kCompatible;
  int n = 0;
  std::int64_t pairs = 0;           // pairs with a happy edge
  std::map<int, std::int64_t> histogram;  // shortening -> count
  std::int64_t at_least_two = 0;
};
HierarchyReport CheckHierarchyPremise(const DistanceMatrix& m);
HierarchyReport CheckHierarchyPremise(int n, FlipKind kind);

// Repeatedly applies the first perfect flip in LegalFlips order until none
// is left.
FlipSequence GreedyPerfectLine(const Tree& in, const Tree& tar, FlipKind kind);

}  // namespace flipspan

#endif  // FLIPSPAN_HAPPY_H_
