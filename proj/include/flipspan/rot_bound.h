#ifndef FLIPSPAN_ROT_BOUND_H_
#define FLIPSPAN_ROT_BOUND_H_

// Rotation sequences of length at most 2(n-1) - max{|L|,|R|,|J|,|D|}.
// Edges are paired through the vertex they are attached to when each tree is
// rooted at v_n; the largest class decides the strategy.

#include <string>
#include <vector>

#include "flipspan/convex.h"
#include "flipspan/flip.h"

namespace flipspan {

class NoApplicableRotation : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class CaseMachineStuck : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

// attached[v] is the edge joining v to its parent when t is rooted at
// `root`; attached[root] is left default-constructed. Index 0 unused.
std::vector<Chord> RootedAttachment(const Tree& t, int root);

enum class RotClass { kRA, kLA, kRB, kLB, kDiving, kJumping };
enum class RotSide { kL, kR, kD, kJ };
std::string ToString(RotClass c);
std::string ToString(RotSide s);

struct RotPair {
  int vertex = 0;
  Chord e_in;
  Chord e_tar;
  RotClass cls = RotClass::kRA;
  bool happy = false;  // e_in == e_tar; reported as RA or LA

  RotSide side() const;
};

struct RotPairing {
  int n = 0;
  std::vector<RotPair> pairs;  // pairs[v-1] for v = 1..n-1
  int count_l = 0;
  int count_r = 0;
  int count_d = 0;
  int count_j = 0;

  const RotPair& At(int v) const { return pairs[v - 1]; }
  int Count(RotSide s) const;
};

RotPairing PairRotations(const Tree& in, const Tree& tar);

// delta_j(v_k) on m points; j = 0 assigns every vertex its right gap.
Chord GapAssignment(int m, int j, int k);

// Target of the star transform: delta_j(v_k) for k not in kstar, (k, m) for
// k in kstar. kstar is indexed by label (size m + 1).
Tree StarTarget(int m, int j, const std::vector<bool>& kstar);

// Rotates t (root m) into StarTarget(m, j, kstar) without removing `keep`.
// budget < 0 means one rotation per vertex whose attached edge is not
// already its target. Throws NoApplicableRotation when the budget is missed.
FlipSequence StarTransform(const Tree& t, int j, const std::vector<bool>& kstar,
                           int budget = -1, const std::vector<Chord>& keep = {});

// Cuts t along `cuts` (the side's edges from this tree) and moves every
// other vertex's edge onto the hull: the gap left of the vertex for R, right
// of it for L.
FlipSequence RotateToHull(const Tree& t, const std::vector<Chord>& cuts,
                          RotSide side);
// Closed form of RotateToHull's result.
Tree HullFormFor(int n, const std::vector<Chord>& kept, RotSide side);

// Direct rotations e_in -> e_tar of the side's unhappy pairs in topological
// order of the full conflict graph.
FlipSequence ResolveLR(const Tree& t1, const RotPairing& p, RotSide side);

// Opener plus the case machine; ends in a tree whose edges are left hull
// edges, J targets, and left-attached edges into J vertices or v_n.
FlipSequence DjForward(const Tree& in, const RotPairing& p);
// budget < 0 means n - 1 - |J|.
FlipSequence DjBackward(const Tree& tar, const RotPairing& p, const Tree& tstar,
                        int budget = -1);

// Checks the three permitted edge types of the J-strategy meeting tree.
bool IsMeetingTree(const Tree& t, const RotPairing& p, std::string* why = nullptr);

struct RotationReport {
  int count_l = 0;
  int count_r = 0;
  int count_d = 0;
  int count_j = 0;
  RotSide strategy = RotSide::kR;
  int bound = 0;
  int emitted = 0;
};

FlipSequence RotationSequence(const Tree& in, const Tree& tar,
                              RotationReport* report = nullptr);

}  // namespace flipspan

#endif  // FLIPSPAN_ROT_BOUND_H_
