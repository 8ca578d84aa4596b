#ifndef FLIPSPAN_CONVEX_H_
#define FLIPSPAN_CONVEX_H_

// Combinatorial model of a convex point set with labels 1..n in
// counterclockwise order. Nothing here ever looks at coordinates: in convex
// position crossing and hull membership are functions of the labels alone,
// and no point lies inside a triangle spanned by three others.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flipspan/errors.h"

namespace flipspan {

inline constexpr int kMinPoints = 3;
// 23 * 22 / 2 = 253 chords fit in a 256-bit ChordSet.
inline constexpr int kMaxPoints = 23;

using VertexMask = std::uint32_t;  // bit v set <=> label v, labels 1..23

void CheckPointCount(int n);

struct Chord {
  int a = 0;
  int b = 0;

  Chord() = default;
  // Normalizes so that a < b. Throws InvalidInput on a == b.
  Chord(int u, int v);

  bool Has(int v) const { return a == v || b == v; }
  int Other(int v) const { return a == v ? b : a; }
  // Length in the linear order v_1..v_n.
  int Length() const { return b - a; }

  friend auto operator<=>(const Chord&, const Chord&) = default;
  friend bool operator==(const Chord&, const Chord&) = default;
};

std::string ToString(const Chord& c);

// Fixed-width bitmask over all chords of an n-gon, chords indexed in
// lexicographic (a, b) order. Ordering of two sets with equal cardinality
// coincides with lexicographic ordering of their sorted chord lists.
class ChordSet {
 public:
  static constexpr int kWords = 4;

  void Set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void Reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool Test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  int Count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool Any() const { return (w_[0] | w_[1] | w_[2] | w_[3]) != 0; }
  bool None() const { return !Any(); }

  ChordSet& operator&=(const ChordSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  ChordSet& operator|=(const ChordSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  ChordSet& operator^=(const ChordSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend ChordSet operator&(ChordSet x, const ChordSet& y) { return x &= y; }
  friend ChordSet operator|(ChordSet x, const ChordSet& y) { return x |= y; }
  friend ChordSet operator^(ChordSet x, const ChordSet& y) { return x ^= y; }
  // x \ y
  friend ChordSet Minus(ChordSet x, const ChordSet& y) {
    for (int i = 0; i < kWords; ++i) x.w_[i] &= ~y.w_[i];
    return x;
  }
  bool Intersects(const ChordSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  template <typename F>
  void ForEach(F&& f) const {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        f(i * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }

  friend bool operator==(const ChordSet&, const ChordSet&) = default;
  friend std::strong_ordering operator<=>(const ChordSet& x,
                                          const ChordSet& y) {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t d = x.w_[i] ^ y.w_[i];
      if (d == 0) continue;
      std::uint64_t low = d & (~d + 1);
      return (x.w_[i] & low) ? std::strong_ordering::less
                             : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::size_t Hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : w_) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
  // Big-endian hex of the bitmask words.
  std::string Hex() const;

  const std::array<std::uint64_t, kWords>& words() const { return w_; }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

struct ChordSetHash {
  std::size_t operator()(const ChordSet& s) const { return s.Hash(); }
};

// Precomputed per-n tables: chord indices, crossing masks, hull flags.
class ChordTable {
 public:
  static const ChordTable& For(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(chords_.size()); }
  int Index(int a, int b) const { return index_[a][b]; }
  int Index(const Chord& c) const { return index_[c.a][c.b]; }
  const Chord& At(int i) const { return chords_[i]; }
  const ChordSet& Crossing(int i) const { return crossing_[i]; }
  const ChordSet& Incident(int v) const { return incident_[v]; }
  const ChordSet& Hull() const { return hull_; }
  bool IsHull(int i) const { return hull_.Test(i); }

 private:
  explicit ChordTable(int n);

  int n_;
  std::array<std::array<int, kMaxPoints + 1>, kMaxPoints + 1> index_{};
  std::vector<Chord> chords_;
  std::vector<ChordSet> crossing_;
  std::array<ChordSet, kMaxPoints + 1> incident_{};
  ChordSet hull_;
};

// Throws InvalidInput if a label is outside 1..n.
void CheckChord(const Chord& c, int n);

// Exactly one endpoint of f strictly inside the open interval (e.a, e.b).
bool Crosses(const Chord& e, const Chord& f);
bool IsHullEdge(const Chord& e, int n);

// Plane spanning tree on n convex points. Immutable value.
class Tree {
 public:
  Tree() = default;  // empty placeholder, n() == 0
  // Throws InvalidInput with the diagnostic of ValidateTree on failure.
  static Tree FromEdges(int n, const std::vector<Chord>& edges);
  // Trusts the caller: mask must already describe a plane spanning tree.
  static Tree FromMaskUnchecked(int n, const ChordSet& mask);

  static Tree HullPath(int n);          // (1,2),(2,3),...,(n-1,n)
  static Tree Star(int n, int center);  // (center, v) for all v

  int n() const { return n_; }
  const ChordSet& mask() const { return mask_; }
  // Canonical code; equal trees <=> equal codes.
  const ChordSet& code() const { return mask_; }
  std::vector<Chord> Edges() const;
  bool Contains(const Chord& c) const;
  bool ContainsIndex(int i) const { return mask_.Test(i); }
  int Degree(int v) const;
  std::vector<int> Neighbors(int v) const;

  // Result of removing `removed` and adding `added`, without validation.
  Tree WithSwap(const Chord& removed, const Chord& added) const;

  // Vertices reachable from `from` after deleting edge `cut` (cut may be a
  // non-edge, then the whole tree is reached).
  VertexMask Component(int from, const Chord& cut) const;
  // Vertex path from u to v inside the tree.
  std::vector<int> Path(int u, int v) const;

  friend bool operator==(const Tree& x, const Tree& y) {
    return x.n_ == y.n_ && x.mask_ == y.mask_;
  }
  friend std::strong_ordering operator<=>(const Tree& x, const Tree& y) {
    if (auto c = x.n_ <=> y.n_; c != 0) return c;
    return x.mask_ <=> y.mask_;
  }

 private:
  Tree(int n, const ChordSet& mask) : n_(n), mask_(mask) {}
  int n_ = 0;
  ChordSet mask_;
};

std::string ToString(const Tree& t);

struct TreeDefect {
  enum class Kind { kWrongEdgeCount, kCrossingPair, kDisconnected, kBadLabel };
  Kind kind;
  std::optional<Chord> first;
  std::optional<Chord> second;
  VertexMask component = 0;  // for kDisconnected: component of vertex 1
  std::string Describe() const;
};

struct TreeValidation {
  std::optional<Tree> tree;
  std::optional<TreeDefect> defect;
  bool ok() const { return tree.has_value(); }
};

// Duplicates collapse (the candidate is a set).
TreeValidation ValidateTree(const std::vector<Chord>& candidate, int n);

// Largest n enumerate_trees accepts (8.4M trees at 12, 54M at 13).
inline constexpr int kMaxEnumerationPoints = 13;

// Every plane spanning tree on n points, exactly once, in canonical order.
// Backtracking over chords in index order with crossing and cycle pruning.
void EnumerateTrees(int n, const std::function<void(const Tree&)>& sink);
std::vector<Tree> AllTrees(int n);
std::int64_t CountTrees(int n);

// A face of T together with the hull: its vertices in cyclic (label) order,
// the tree edges bordering it, and its unique consecutive hull pair that is
// not a tree edge.
struct Face {
  std::vector<int> vertices;
  std::vector<Chord> border;
  Chord hull_gap;
};

std::vector<Face> Faces(const Tree& t);

// Regions of the n-gon after cutting along a set of pairwise non-crossing
// chords (hull chords do not cut). Each region is returned as its vertex
// list sorted by label, which is also its cyclic order.
std::vector<std::vector<int>> CutRegions(int n, const std::vector<Chord>& cuts);

}  // namespace flipspan

template <>
struct std::hash<flipspan::ChordSet> {
  std::size_t operator()(const flipspan::ChordSet& s) const { return s.Hash(); }
};

#endif  // FLIPSPAN_CONVEX_H_
