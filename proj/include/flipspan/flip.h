#ifndef FLIPSPAN_FLIP_H_
#define FLIPSPAN_FLIP_H_

#include <optional>
#include <string>
#include <vector>

#include "flipspan/convex.h"

namespace flipspan {

// Ordered from finest to coarsest: Slide ⊂ Rotation ⊂ Compatible ⊂ Unrestricted.
enum class FlipKind { kSlide = 0, kRotation = 1, kCompatible = 2, kUnrestricted = 3 };

// True if a flip whose finest kind is `finest` qualifies as `claimed`.
inline bool Satisfies(FlipKind finest, FlipKind claimed) {
  return static_cast<int>(finest) <= static_cast<int>(claimed);
}

std::string ToString(FlipKind k);
FlipKind ParseFlipKind(const std::string& s);  // throws InvalidInput

struct FlipStep {
  Chord removed;
  Chord added;
  FlipKind kind = FlipKind::kUnrestricted;  // claimed, not necessarily finest

  FlipStep Reversed() const { return {added, removed, kind}; }
  friend bool operator==(const FlipStep&, const FlipStep&) = default;
};

struct FlipSequence {
  Tree start;
  std::vector<FlipStep> steps;

  int size() const { return static_cast<int>(steps.size()); }
};

// Reasons a single flip is rejected.
enum class FlipDefect {
  kNotInTree,
  kAlreadyInTree,
  kNotATreeAfterFlip,
  kKindMismatch,
};
std::string ToString(FlipDefect d);

class FlipError : public InvalidInput {
 public:
  FlipError(FlipDefect defect, const std::string& what)
      : InvalidInput(what), defect_(defect) {}
  FlipDefect defect() const { return defect_; }

 private:
  FlipDefect defect_;
};

class InvalidStep : public InvalidInput {
 public:
  InvalidStep(int index, FlipDefect reason, const std::string& detail)
      : InvalidInput("InvalidStep(" + std::to_string(index) + ", " +
                     ToString(reason) + "): " + detail),
        index_(index),
        reason_(reason) {}
  int index() const { return index_; }  // 1-based
  FlipDefect reason() const { return reason_; }

 private:
  int index_;
  FlipDefect reason_;
};

// Finest kind of the flip (remove `removed`, add `added`) on t. Throws
// FlipError when the flip is not a flip at all.
FlipKind ClassifyFlip(const Tree& t, const Chord& removed, const Chord& added);
// Non-throwing variant: nullopt when illegal.
std::optional<FlipKind> TryClassifyFlip(const Tree& t, const Chord& removed,
                                        const Chord& added);

// All flips qualifying as `kind`, sorted by removed then added chord. The
// step's `kind` field is the requested kind.
std::vector<FlipStep> LegalFlips(const Tree& t, FlipKind kind);

// Neighbouring trees under `kind`, same order as LegalFlips.
template <typename F>
void ForEachNeighbor(const Tree& t, FlipKind kind, F&& f);

// Applies every step, validating tree-ness and the claimed kind.
Tree Apply(const FlipSequence& seq);
// Trees T_0..T_k visited by the sequence.
std::vector<Tree> Trajectory(const FlipSequence& seq);
// Steps between consecutive trees of a path; equal neighbours are skipped.
std::vector<FlipStep> StepsBetween(const std::vector<Tree>& trees, FlipKind kind);

FlipSequence Reverse(const FlipSequence& seq);
// Concatenation; second.start must equal the end of first.
FlipSequence Concat(const FlipSequence& first, const FlipSequence& second);

// Implementation detail shared by LegalFlips and the oracle hot loop.
namespace internal {

template <typename F>
void ForEachFlip(const Tree& t, FlipKind kind, F&& f) {
  const int n = t.n();
  const ChordTable& table = ChordTable::For(n);
  const ChordSet& mask = t.mask();
  mask.ForEach([&](int ri) {
    const Chord& r = table.At(ri);
    ChordSet rest = mask;
    rest.Reset(ri);
    VertexMask side = t.Component(r.a, r);
    for (int ai = 0; ai < table.size(); ++ai) {
      if (mask.Test(ai)) continue;
      const Chord& a = table.At(ai);
      bool sa = (side >> a.a) & 1U;
      bool sb = (side >> a.b) & 1U;
      if (sa == sb) continue;
      if (table.Crossing(ai).Intersects(rest)) continue;
      if (kind != FlipKind::kUnrestricted) {
        if (table.Crossing(ai).Test(ri)) continue;
        if (kind != FlipKind::kCompatible) {
          int shared = r.Has(a.a) ? a.a : (r.Has(a.b) ? a.b : 0);
          if (shared == 0) continue;
          if (kind == FlipKind::kSlide) {
            int w = r.Other(shared);
            int u = a.Other(shared);
            if (!mask.Test(table.Index(u, w))) continue;
          }
        }
      }
      f(ri, ai);
    }
  });
}

}  // namespace internal

template <typename F>
void ForEachNeighbor(const Tree& t, FlipKind kind, F&& f) {
  ChordSet base = t.mask();
  internal::ForEachFlip(t, kind, [&](int ri, int ai) {
    ChordSet m = base;
    m.Reset(ri);
    m.Set(ai);
    f(m);
  });
}

}  // namespace flipspan

#endif  // FLIPSPAN_FLIP_H_
