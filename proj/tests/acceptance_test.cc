// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria. All comparisons are exact (integers or rationals).

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flipspan/fpt.h"
#include "flipspan/happy.h"
#include "flipspan/json_io.h"
#include "flipspan/oracle.h"
#include "flipspan/sweeps.h"

namespace flipspan {
namespace {

const FlipKind kThreeKinds[] = {FlipKind::kUnrestricted, FlipKind::kCompatible,
                                FlipKind::kRotation};

const DistanceMatrix& Matrix(int n, FlipKind kind) {
  static std::map<std::pair<int, FlipKind>, DistanceMatrix> cache;
  auto it = cache.find({n, kind});
  if (it == cache.end()) it = cache.emplace(std::pair{n, kind}, DistanceMatrix::Compute(n, kind)).first;
  return it->second;
}

Json Fixture(const char* name) {
  return ReadJsonFile(std::string(FLIPSPAN_FIXTURES) + "/" + name);
}

// Independent count: every (n-1)-subset of chords, kept when pairwise
// non-crossing and acyclic.
long BruteForceTreeCount(int n) {
  std::vector<std::pair<int, int>> chords;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) chords.push_back({a, b});
  }
  const int m = static_cast<int>(chords.size());
  auto cross = [](std::pair<int, int> e, std::pair<int, int> f) {
    auto inside = [&](int v) { return e.first < v && v < e.second; };
    auto outside = [&](int v) { return v < e.first || v > e.second; };
    return (inside(f.first) && outside(f.second)) || (inside(f.second) && outside(f.first));
  };
  long count = 0;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == n - 1) {
      std::vector<int> parent(n + 1);
      for (int v = 0; v <= n; ++v) parent[v] = v;
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      for (std::size_t i = 0; i < pick.size(); ++i) {
        for (std::size_t j = i + 1; j < pick.size(); ++j) {
          if (cross(chords[pick[i]], chords[pick[j]])) return;
        }
        int x = find(chords[pick[i]].first), y = find(chords[pick[i]].second);
        if (x == y) return;
        parent[x] = y;
      }
      ++count;
      return;
    }
    for (int i = from; i < m; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return count;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail << " FIRST FAILURE: " << what << ";";
    }
  }
};

void C1(Outcome& o) {
  const long expected[] = {3, 12, 55, 273};
  for (int n = 3; n <= 6; ++n) {
    long brute = BruteForceTreeCount(n);
    std::int64_t fast = CountTrees(n);
    o.detail << " n=" << n << ":" << fast;
    o.Require(brute == expected[n - 3] && fast == brute, "count at n=" + std::to_string(n));
  }
}

void C2(Outcome& o) {
  for (int n = 4; n <= 7; ++n) {
    for (FlipKind kind : kThreeKinds) {
      int r = ComputeDiameterRadius(Matrix(n, kind)).radius;
      o.Require(r == n - 2, ToString(kind) + " radius at n=" + std::to_string(n) + " is " +
                                std::to_string(r));
    }
  }
  o.detail << " radius n-2 for n=4..7, three kinds;";
}

void C3(Outcome& o) {
  for (int n = 4; n <= 8; ++n) {
    o.detail << " n=" << n << ":";
    for (FlipKind kind : kThreeKinds) {
      int d = ComputeDiameterRadius(Matrix(n, kind)).diameter;
      o.detail << ToString(kind)[0] << d;
      o.Require(n - 2 <= d && d <= 2 * n - 4,
                ToString(kind) + " diameter " + std::to_string(d) + " at n=" + std::to_string(n));
      if (kind == FlipKind::kUnrestricted) {
        o.Require(d >= 3 * n / 2 - 5, "unrestricted lower bound at n=" + std::to_string(n));
      }
    }
  }
}

void Report(Outcome& o, const SweepResult& r) {
  o.Require(r.ok(), r.check + " n=" + std::to_string(r.n) + ": " + r.first_failure);
}

void C4(Outcome& o) {
  std::int64_t total = 0;
  for (int n = 3; n <= 7; ++n) {
    SweepResult r = CheckCompatibleBound(n);
    total += r.checked;
    Report(o, r);
  }
  for (int n : {10, 15, 20}) {
    SweepResult r = CheckCompatibleBound(n, 10000, 100 + n);
    total += r.checked;
    Report(o, r);
  }
  o.detail << " " << total << " pairs;";
}

void C5(Outcome& o) {
  std::int64_t total = 0;
  for (int n = 3; n <= 7; ++n) {
    SweepResult r = CheckRotationBound(n);
    total += r.checked;
    Report(o, r);
  }
  for (int n : {10, 15, 20}) {
    SweepResult r = CheckRotationBound(n, 10000, 200 + n);
    total += r.checked;
    Report(o, r);
  }
  o.detail << " " << total << " pairs;";
}

// The geodesic DAG decides the property on every pair; explicit listing of
// every geodesic confirms it independently.
void C6(Outcome& o) {
  std::uint64_t listed = 0;
  for (int n = 3; n <= 6; ++n) {
    PropertyVerdict v = VerifyHappy(n, FlipKind::kCompatible, HappyProperty::kStrongHappy);
    o.Require(v.holds, "DAG check at n=" + std::to_string(n));
    const DistanceMatrix& m = Matrix(n, FlipKind::kCompatible);
    const FlipGraph& g = m.graph();
    for (int i = 0; i < g.size(); ++i) {
      for (int j = 0; j < g.size(); ++j) {
        Tree a = g.TreeAt(i), b = g.TreeAt(j);
        ChordSet happy = a.mask() & b.mask();
        for (const FlipSequence& s : AllGeodesics(a, b, FlipKind::kCompatible)) {
          ++listed;
          for (const FlipStep& st : s.steps) {
            o.Require(!happy.Test(ChordTable::For(n).Index(st.removed)),
                      "geodesic removes a happy edge: " + ToString(a) + " -> " + ToString(b));
          }
        }
      }
    }
  }
  o.detail << " " << listed << " geodesics listed at n<=6;";
}

void C7(Outcome& o) {
  int found_n = 0;
  for (int n = 3; n <= 7 && found_n == 0; ++n) {
    auto pair = FindHappyViolation(Matrix(n, FlipKind::kRotation));
    if (!pair) continue;
    found_n = n;
    auto [a, b] = *pair;
    ChordSet happy = a.mask() & b.mask();
    const ChordTable& table = ChordTable::For(n);
    for (const FlipSequence& s : AllGeodesics(a, b, FlipKind::kRotation)) {
      bool removes = false;
      for (const FlipStep& st : s.steps) removes |= happy.Test(table.Index(st.removed));
      o.Require(removes, "a geodesic keeps every happy edge");
    }
    o.detail << " minimal n=" << n << " " << ToString(a) << " -> " << ToString(b) << ";";
  }
  o.Require(found_n > 0, "no rotation violation up to n=7");

  Json j = Fixture("fig11.json");
  Tree in = TreeFromJson(j["in"]), tar = TreeFromJson(j["tar"]);
  int d = Distance(in, tar, FlipKind::kRotation).distance;
  int kept = ConstrainedDistance(in, tar, FlipKind::kRotation, in.mask() & tar.mask());
  o.detail << " fig11 distance " << d << ", happy-preserving " << kept << ";";
  o.Require(d == 3, "fig11 rotation distance");
  o.Require(kept < 0 || kept >= 4, "fig11 happy-preserving length");
}

void C8(Outcome& o) {
  Json j = Fixture("fig6.json");
  Tree in = TreeFromJson(j["in"]), tar = TreeFromJson(j["tar"]);
  FlipSequence line = GreedyPerfectLine(in, tar, FlipKind::kCompatible);
  Tree star = Apply(line);
  o.Require(PerfectFlips(star, tar, FlipKind::kUnrestricted).empty(), "greedy line not stuck");
  for (FlipKind kind : {FlipKind::kUnrestricted, FlipKind::kCompatible}) {
    int rest = Distance(star, tar, kind).distance;
    int best = Distance(in, tar, kind).distance;
    o.detail << " " << ToString(kind) << ": line " << line.size() << " + " << rest << " > "
             << best << ";";
    o.Require(line.size() + rest > best, "greedy line optimal under " + ToString(kind));
    o.Require(rest == (kind == FlipKind::kUnrestricted ? 3 : 4), "remaining cost");
    auto v = FindPerfectFlipViolation(kind, 7);
    o.Require(v.has_value(), "no perfect-flip violation for " + ToString(kind));
    if (v) {
      ReplayEvidence(*v);
      o.detail << " first violation n=" << v->n << ";";
    }
  }
}

void C9(Outcome& o) {
  SweepResult r = CheckParkingNormalization(1000, 8, 2024);
  Report(o, r);
  o.detail << " " << r.checked << " sequences;";
}

void C10(Outcome& o) {
  for (FlipKind kind : {FlipKind::kUnrestricted, FlipKind::kCompatible}) {
    std::int64_t pairs = 0, nodes = 0;
    for (int n = 3; n <= 7; ++n) {
      const DistanceMatrix& m = Matrix(n, kind);
      const FlipGraph& g = m.graph();
      for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j) {
          Tree a = g.TreeAt(i), b = g.TreeAt(j);
          const int d = m.At(i, j);
          ++pairs;
          FptResult r = FptDistance(a, b, kind, d);
          nodes += r.nodes_expanded;
          o.Require(r.found && r.length() == d && Apply(r.sequence) == b,
                    "k=d on " + ToString(a) + " -> " + ToString(b));
          if (d > 0) {
            o.Require(!FptDistance(a, b, kind, d - 1).found,
                      "k=d-1 on " + ToString(a) + " -> " + ToString(b));
          }
          ReducedInstance red = Contract(a, b);
          const DistanceMatrix& rm = Matrix(red.m(), kind);
          int rd = rm.At(rm.graph().IndexOf(red.in), rm.graph().IndexOf(red.tar));
          o.Require(rd == d, "contraction on " + ToString(a) + " -> " + ToString(b));
        }
      }
    }
    o.detail << " " << ToString(kind) << ": " << pairs << " pairs, " << nodes << " nodes;";
  }
}

void C11(Outcome& o) {
  std::int64_t trees = 0;
  for (int n = 3; n <= 7; ++n) {
    SweepResult b = CheckGapBijection(n), s = CheckShortWideCounts(n);
    Report(o, b);
    Report(o, s);
    trees += b.checked;
  }
  o.detail << " " << trees << " trees;";
}

}  // namespace
}  // namespace flipspan

int main() {
  using namespace flipspan;
  struct Criterion {
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {"1 enumeration counts", C1},        {"2 radius n-2", C2},
      {"3 diameter sandwich", C3},         {"4 compatible bound", C4},
      {"5 rotation bound", C5},            {"6 strong happy (compatible)", C6},
      {"7 rotation happy violation", C7},  {"8 perfect-flip violation", C8},
      {"9 parking normalization", C9},     {"10 fpt equals oracle", C10},
      {"11 bijection and short/wide", C11},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s:%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
