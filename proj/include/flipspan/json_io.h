#ifndef FLIPSPAN_JSON_IO_H_
#define FLIPSPAN_JSON_IO_H_

// Interchange formats.
//   Tree:         {"n": 5, "edges": [[1,2], ...]}   canonical edge order
//   FlipSequence: {"start": Tree, "kind": "compatible",
//                  "steps": [{"remove": [a,b], "add": [c,d]}, ...]}
// Parsing validates everything and throws InvalidInput.

#include <string>

#include "json.hpp"
#include "flipspan/convex.h"
#include "flipspan/flip.h"
#include "flipspan/happy.h"

namespace flipspan {

using Json = nlohmann::ordered_json;

Json ChordToJson(const Chord& c);
Chord ChordFromJson(const Json& j, int n);

Json TreeToJson(const Tree& t);
Tree TreeFromJson(const Json& j);

// "kind" is the coarsest claimed kind; steps claiming something finer are
// read back with that coarser claim.
Json SequenceToJson(const FlipSequence& s);
FlipSequence SequenceFromJson(const Json& j);

Json VerdictToJson(const PropertyVerdict& v);
PropertyVerdict VerdictFromJson(const Json& j);

Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);

}  // namespace flipspan

#endif  // FLIPSPAN_JSON_IO_H_
