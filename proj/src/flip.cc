#include "flipspan/flip.h"

#include <algorithm>

namespace flipspan {

std::string ToString(FlipKind k) {
  switch (k) {
    case FlipKind::kSlide:
      return "slide";
    case FlipKind::kRotation:
      return "rotation";
    case FlipKind::kCompatible:
      return "compatible";
    case FlipKind::kUnrestricted:
      return "unrestricted";
  }
  return "?";
}

FlipKind ParseFlipKind(const std::string& s) {
  if (s == "slide") return FlipKind::kSlide;
  if (s == "rotation") return FlipKind::kRotation;
  if (s == "compatible") return FlipKind::kCompatible;
  if (s == "unrestricted" || s == "flip") return FlipKind::kUnrestricted;
  throw InvalidInput("unknown flip kind '" + s + "'");
}

std::string ToString(FlipDefect d) {
  switch (d) {
    case FlipDefect::kNotInTree:
      return "NotInTree";
    case FlipDefect::kAlreadyInTree:
      return "AlreadyInTree";
    case FlipDefect::kNotATreeAfterFlip:
      return "NotATreeAfterFlip";
    case FlipDefect::kKindMismatch:
      return "KindMismatch";
  }
  return "?";
}

namespace {

// Returns the defect, or nullopt and sets *finest.
std::optional<FlipDefect> Examine(const Tree& t, const Chord& removed,
                                  const Chord& added, FlipKind* finest,
                                  std::string* detail) {
  const int n = t.n();
  CheckChord(removed, n);
  CheckChord(added, n);
  if (!t.Contains(removed)) {
    *detail = ToString(removed) + " not in tree";
    return FlipDefect::kNotInTree;
  }
  if (t.Contains(added) || added == removed) {
    *detail = ToString(added) + " already in tree";
    return FlipDefect::kAlreadyInTree;
  }
  const ChordTable& table = ChordTable::For(n);
  ChordSet rest = t.mask();
  rest.Reset(table.Index(removed));
  if (table.Crossing(table.Index(added)).Intersects(rest)) {
    *detail = ToString(added) + " crosses a remaining edge";
    return FlipDefect::kNotATreeAfterFlip;
  }
  VertexMask side = t.Component(removed.a, removed);
  bool sa = (side >> added.a) & 1U;
  bool sb = (side >> added.b) & 1U;
  if (sa == sb) {
    *detail = ToString(added) + " closes a cycle without " + ToString(removed);
    return FlipDefect::kNotATreeAfterFlip;
  }
  FlipKind k = FlipKind::kUnrestricted;
  if (!Crosses(removed, added)) {
    k = FlipKind::kCompatible;
    int shared = removed.Has(added.a) ? added.a : (removed.Has(added.b) ? added.b : 0);
    if (shared != 0) {
      k = FlipKind::kRotation;
      int w = removed.Other(shared);
      int u = added.Other(shared);
      if (t.Contains(Chord(u, w))) k = FlipKind::kSlide;
    }
  }
  *finest = k;
  return std::nullopt;
}

}  // namespace

FlipKind ClassifyFlip(const Tree& t, const Chord& removed, const Chord& added) {
  FlipKind k{};
  std::string detail;
  if (auto d = Examine(t, removed, added, &k, &detail)) throw FlipError(*d, detail);
  return k;
}

std::optional<FlipKind> TryClassifyFlip(const Tree& t, const Chord& removed,
                                        const Chord& added) {
  FlipKind k{};
  std::string detail;
  if (Examine(t, removed, added, &k, &detail)) return std::nullopt;
  return k;
}

std::vector<FlipStep> LegalFlips(const Tree& t, FlipKind kind) {
  const ChordTable& table = ChordTable::For(t.n());
  std::vector<FlipStep> out;
  internal::ForEachFlip(t, kind, [&](int ri, int ai) {
    out.push_back({table.At(ri), table.At(ai), kind});
  });
  return out;
}

std::vector<Tree> Trajectory(const FlipSequence& seq) {
  std::vector<Tree> out{seq.start};
  out.reserve(seq.steps.size() + 1);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const FlipStep& s = seq.steps[i];
    const Tree& cur = out.back();
    FlipKind finest{};
    std::string detail;
    if (auto d = Examine(cur, s.removed, s.added, &finest, &detail)) {
      throw InvalidStep(static_cast<int>(i) + 1, *d, detail);
    }
    if (!Satisfies(finest, s.kind)) {
      throw InvalidStep(static_cast<int>(i) + 1, FlipDefect::kKindMismatch,
                        "finest kind " + ToString(finest) + " is not " +
                            ToString(s.kind));
    }
    out.push_back(cur.WithSwap(s.removed, s.added));
  }
  return out;
}

Tree Apply(const FlipSequence& seq) { return Trajectory(seq).back(); }

std::vector<FlipStep> StepsBetween(const std::vector<Tree>& trees, FlipKind kind) {
  std::vector<FlipStep> out;
  for (std::size_t i = 0; i + 1 < trees.size(); ++i) {
    const Tree& x = trees[i];
    const Tree& y = trees[i + 1];
    if (x == y) continue;
    ChordSet gone = Minus(x.mask(), y.mask());
    ChordSet come = Minus(y.mask(), x.mask());
    FLIPSPAN_CHECK(gone.Count() == 1 && come.Count() == 1,
                   "consecutive trees differ by more than one flip");
    const ChordTable& table = ChordTable::For(x.n());
    int r = -1, a = -1;
    gone.ForEach([&](int i2) { r = i2; });
    come.ForEach([&](int i2) { a = i2; });
    out.push_back({table.At(r), table.At(a), kind});
  }
  return out;
}

FlipSequence Reverse(const FlipSequence& seq) {
  FlipSequence out{Apply(seq), {}};
  for (auto it = seq.steps.rbegin(); it != seq.steps.rend(); ++it) {
    out.steps.push_back(it->Reversed());
  }
  return out;
}

FlipSequence Concat(const FlipSequence& first, const FlipSequence& second) {
  FLIPSPAN_CHECK(Apply(first) == second.start, "sequences do not chain");
  FlipSequence out = first;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  return out;
}

}  // namespace flipspan
