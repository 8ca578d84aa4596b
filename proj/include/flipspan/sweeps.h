#ifndef FLIPSPAN_SWEEPS_H_
#define FLIPSPAN_SWEEPS_H_

// Batch checks shared by the command line tool and the acceptance binary.
// Each one counts instances and failures and keeps the first failure.

#include <cstdint>
#include <string>

#include "flipspan/convex.h"
#include "flipspan/flip.h"

namespace flipspan {

struct SweepResult {
  std::string check;
  int n = 0;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string first_failure;  // empty when none

  bool ok() const { return failures == 0; }
  void Fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Every tree on n points: rho_T is a bijection onto the edges and rho(g)
// covers gap g.
SweepResult CheckGapBijection(int n);
// Every tree on n points: |S| >= k and |W| <= |S| - k, k = uncovered edges.
SweepResult CheckShortWideCounts(int n);

// Constructive sequences against their closed-form bounds. Exhaustive over
// every ordered pair, or over `count` random pairs.
SweepResult CheckCompatibleBound(int n);
SweepResult CheckCompatibleBound(int n, int count, std::uint64_t seed);
SweepResult CheckRotationBound(int n);
SweepResult CheckRotationBound(int n, int count, std::uint64_t seed);

// Random compatible walks of length 1..12 on 4..max_n points, normalized so
// that every parking edge is a hull edge.
SweepResult CheckParkingNormalization(int count, int max_n, std::uint64_t seed);

}  // namespace flipspan

#endif  // FLIPSPAN_SWEEPS_H_
