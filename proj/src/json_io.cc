#include "flipspan/json_io.h"

#include <fstream>
#include <sstream>

namespace flipspan {

namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("JSON: missing field \"") + key + "\"");
  }
  return j.at(key);
}

int IntField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    throw InvalidInput(std::string("JSON: field \"") + key + "\" is not an integer");
  }
  return v.get<int>();
}

}  // namespace

Json ChordToJson(const Chord& c) { return Json::array({c.a, c.b}); }

Chord ChordFromJson(const Json& j, int n) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw InvalidInput("JSON: a chord is a pair of integer labels, got " + j.dump());
  }
  Chord c(j[0].get<int>(), j[1].get<int>());
  CheckChord(c, n);
  return c;
}

Json TreeToJson(const Tree& t) {
  Json edges = Json::array();
  for (const Chord& c : t.Edges()) edges.push_back(ChordToJson(c));
  return Json{{"n", t.n()}, {"edges", edges}};
}

Tree TreeFromJson(const Json& j) {
  int n = IntField(j, "n");
  CheckPointCount(n);
  const Json& edges = Field(j, "edges");
  if (!edges.is_array()) throw InvalidInput("JSON: \"edges\" is not an array");
  std::vector<Chord> chords;
  for (const Json& e : edges) chords.push_back(ChordFromJson(e, n));
  return Tree::FromEdges(n, chords);
}

Json SequenceToJson(const FlipSequence& s) {
  FlipKind kind = FlipKind::kSlide;
  Json steps = Json::array();
  for (const FlipStep& st : s.steps) {
    if (!Satisfies(st.kind, kind)) kind = st.kind;
    steps.push_back({{"remove", ChordToJson(st.removed)}, {"add", ChordToJson(st.added)}});
  }
  if (s.steps.empty()) kind = FlipKind::kUnrestricted;
  return Json{{"start", TreeToJson(s.start)}, {"kind", ToString(kind)}, {"steps", steps}};
}

FlipSequence SequenceFromJson(const Json& j) {
  FlipSequence s;
  s.start = TreeFromJson(Field(j, "start"));
  const Json& kind = Field(j, "kind");
  if (!kind.is_string()) throw InvalidInput("JSON: \"kind\" is not a string");
  FlipKind k = ParseFlipKind(kind.get<std::string>());
  const Json& steps = Field(j, "steps");
  if (!steps.is_array()) throw InvalidInput("JSON: \"steps\" is not an array");
  const int n = s.start.n();
  for (const Json& st : steps) {
    s.steps.push_back({ChordFromJson(Field(st, "remove"), n),
                       ChordFromJson(Field(st, "add"), n), k});
  }
  Apply(s);
  return s;
}

Json VerdictToJson(const PropertyVerdict& v) {
  Json out{{"property", ToString(v.property)},
           {"kind", ToString(v.kind)},
           {"n", v.n},
           {"verdict", v.holds ? "HoldsExhaustively" : "CounterexampleFound"},
           {"pairs_checked", v.pairs_checked}};
  if (v.evidence) {
    const PropertyEvidence& ev = *v.evidence;
    out["evidence"] = Json{{"in", TreeToJson(ev.in)},
                           {"tar", TreeToJson(ev.tar)},
                           {"distance", ev.distance},
                           {"witness", SequenceToJson(ev.witness)},
                           {"other", ev.other}};
  }
  return out;
}

PropertyVerdict VerdictFromJson(const Json& j) {
  PropertyVerdict v;
  const std::string prop = Field(j, "property").get<std::string>();
  bool known = false;
  for (HappyProperty p : {HappyProperty::kWeakHappy, HappyProperty::kStrongHappy,
                          HappyProperty::kPerfectFlip, HappyProperty::kParkingOnHull}) {
    if (ToString(p) == prop) {
      v.property = p;
      known = true;
    }
  }
  if (!known) throw InvalidInput("JSON: unknown property " + prop);
  v.kind = ParseFlipKind(Field(j, "kind").get<std::string>());
  v.n = IntField(j, "n");
  v.holds = Field(j, "verdict").get<std::string>() == "HoldsExhaustively";
  if (j.contains("pairs_checked")) v.pairs_checked = j.at("pairs_checked").get<std::int64_t>();
  if (j.contains("evidence")) {
    const Json& e = j.at("evidence");
    PropertyEvidence ev;
    ev.in = TreeFromJson(Field(e, "in"));
    ev.tar = TreeFromJson(Field(e, "tar"));
    ev.distance = IntField(e, "distance");
    ev.witness = SequenceFromJson(Field(e, "witness"));
    ev.other = IntField(e, "other");
    v.evidence = std::move(ev);
  }
  return v;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace flipspan
