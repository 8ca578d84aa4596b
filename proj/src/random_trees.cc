#include "flipspan/random_trees.h"

#include <algorithm>
#include <numeric>

namespace flipspan {

Tree RandomTree(int n, Rng& rng) {
  const ChordTable& table = ChordTable::For(n);
  std::vector<int> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  ChordSet mask;
  int edges = 0;
  for (int i : order) {
    if (table.Crossing(i).Intersects(mask)) continue;
    const Chord& c = table.At(i);
    int x = find(c.a), y = find(c.b);
    if (x == y) continue;
    parent[x] = y;
    mask.Set(i);
    if (++edges == n - 1) break;
  }
  FLIPSPAN_CHECK(edges == n - 1, "greedy insertion did not span");
  return Tree::FromMaskUnchecked(n, mask);
}

FlipSequence RandomWalk(const Tree& start, FlipKind kind, int length, Rng& rng) {
  FlipSequence seq{start, {}};
  Tree cur = start;
  for (int i = 0; i < length; ++i) {
    auto flips = LegalFlips(cur, kind);
    FLIPSPAN_CHECK(!flips.empty(), "tree without legal flips");
    std::uniform_int_distribution<std::size_t> pick(0, flips.size() - 1);
    const FlipStep& s = flips[pick(rng)];
    seq.steps.push_back(s);
    cur = cur.WithSwap(s.removed, s.added);
  }
  return seq;
}

}  // namespace flipspan
