#ifndef FLIPSPAN_COMPAT_BOUND_H_
#define FLIPSPAN_COMPAT_BOUND_H_

// Constructive compatible flip sequences of length at most
// 5/3 d + 2/3 b + c - 1/3, where d = |T_in \ T_tar|, b = common hull edges,
// c = common diagonals.

#include <string>
#include <vector>

#include "flipspan/convex.h"
#include "flipspan/flip.h"
#include "flipspan/linrep.h"

namespace flipspan {

class StuckWithoutPerfectFlip : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

struct BoundParams {
  int d = 0;
  int b = 0;
  int c = 0;

  // 3 * (5/3 d + 2/3 b + c - 1/3), kept integral.
  int TripleBound() const { return 5 * d + 2 * b + 3 * c - 1; }
  // Exact rational comparison len <= bound. d = 0 only admits len = 0.
  bool Admits(int length) const {
    if (d == 0) return length == 0;
    return 3 * length <= TripleBound();
  }
  std::string BoundString() const;  // e.g. "23/3"
};

BoundParams ComputeBoundParams(const Tree& in, const Tree& tar);

// Phase 3 engines. `context` must consist of hull edges plus the initial
// edges of `pairs`; labels are in linear order with (1,n) free.
FlipSequence ResolveAB(const Tree& context, const std::vector<GapPair>& pairs);
FlipSequence ResolveC(const Tree& context, const std::vector<GapPair>& pairs);

struct HullCoveredStats {
  std::int64_t states = 0;
  std::int64_t backtracks = 0;
};

// Exactly |in \ tar| perfect compatible flips; requires in ∪ tar to contain
// every hull edge. Greedy with a hull-first preference; if the greedy choice
// dead-ends it backtracks (counted in stats) before giving up.
FlipSequence HullCoveredSequence(const Tree& in, const Tree& tar,
                                 HullCoveredStats* stats = nullptr);

// Bookkeeping of one region without common diagonals.
struct RegionReport {
  std::vector<int> labels;  // local vertex i+1 is global labels[i]
  int d = 0;
  int b = 0;
  bool hull_covered = false;
  // Five-phase case only.
  int d1 = 0;
  int d2 = 0;
  int d3 = 0;
  int size_a = 0;
  int size_b = 0;
  int size_c = 0;
  PairClass largest = PairClass::kAbove;
  int phase_lengths[5] = {0, 0, 0, 0, 0};
  int emitted = 0;
};

struct CompatibleReport {
  BoundParams params;
  int emitted = 0;
  std::vector<RegionReport> regions;
  HullCoveredStats hull_covered;
};

// Five-phase plan on a pair without common diagonals whose union misses the
// hull edge (1,n). Exposed for tests.
FlipSequence FivePhaseSequence(const Tree& in, const Tree& tar,
                               RegionReport* report = nullptr);

FlipSequence CompatibleSequence(const Tree& in, const Tree& tar,
                                CompatibleReport* report = nullptr);

}  // namespace flipspan

#endif  // FLIPSPAN_COMPAT_BOUND_H_
