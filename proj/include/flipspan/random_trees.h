#ifndef FLIPSPAN_RANDOM_TREES_H_
#define FLIPSPAN_RANDOM_TREES_H_

#include <random>

#include "flipspan/convex.h"
#include "flipspan/flip.h"

namespace flipspan {

using Rng = std::mt19937_64;

// Inserts chords in random order, keeping those that cross nothing and close
// no cycle. Not uniform over trees, but every tree has positive probability.
Tree RandomTree(int n, Rng& rng);

// Random walk of `length` flips of the given kind (uniform over legal flips
// at each step).
FlipSequence RandomWalk(const Tree& start, FlipKind kind, int length, Rng& rng);

}  // namespace flipspan

#endif  // FLIPSPAN_RANDOM_TREES_H_
