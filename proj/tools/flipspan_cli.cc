// flipspan: batch front end. Every command writes JSON lines (export writes
// DOT). Exit codes: 1 invalid input, 2 budget exceeded, 3 a guaranteed
// property failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "flipspan/compat_bound.h"
#include "flipspan/fpt.h"
#include "flipspan/happy.h"
#include "flipspan/json_io.h"
#include "flipspan/oracle.h"
#include "flipspan/rot_bound.h"
#include "flipspan/sweeps.h"

namespace flipspan {
namespace {

struct Shared {
  std::string out_path;
  std::string kind = "unrestricted";
  std::int64_t budget = kDefaultNodeBudget;
  std::uint64_t seed = 1;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Line(const Json& j) { stream() << j.dump() << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Tree ReadTree(const std::string& path) { return TreeFromJson(ReadJsonFile(path)); }

Json SweepToJson(const SweepResult& r) {
  Json j{{"check", r.check},
         {"n", r.n},
         {"checked", r.checked},
         {"failures", r.failures},
         {"verdict", r.ok() ? "Holds" : "Violated"}};
  if (!r.ok()) j["first_failure"] = r.first_failure;
  return j;
}

int RunEnumerate(int n, bool stream, Output& out) {
  std::int64_t count = 0;
  EnumerateTrees(n, [&](const Tree& t) {
    ++count;
    if (stream) out.Line(TreeToJson(t));
  });
  out.Line({{"n", n}, {"count", count}});
  return 0;
}

int RunDistance(const std::string& a, const std::string& b, const Shared& s, Output& out) {
  Tree from = ReadTree(a), to = ReadTree(b);
  if (from.n() != to.n()) throw InvalidInput("trees on different point sets");
  FlipKind kind = ParseFlipKind(s.kind);
  DistanceReport rep = Distance(from, to, kind, s.budget);
  out.Line({{"kind", ToString(kind)},
            {"distance", rep.distance},
            {"witness", SequenceToJson(rep.witness)}});
  return 0;
}

int RunSequence(const std::string& a, const std::string& b, const Shared& s, Output& out) {
  Tree from = ReadTree(a), to = ReadTree(b);
  if (from.n() != to.n()) throw InvalidInput("trees on different point sets");
  FlipKind kind = ParseFlipKind(s.kind);
  Json j;
  if (kind == FlipKind::kCompatible) {
    CompatibleReport rep;
    FlipSequence seq = CompatibleSequence(from, to, &rep);
    FLIPSPAN_CHECK(rep.params.Admits(seq.size()), "compatible bound exceeded");
    j = {{"kind", "compatible"},
         {"length", seq.size()},
         {"bound", rep.params.BoundString()},
         {"d", rep.params.d},
         {"b", rep.params.b},
         {"c", rep.params.c},
         {"sequence", SequenceToJson(seq)}};
  } else if (kind == FlipKind::kRotation) {
    RotationReport rep;
    FlipSequence seq = RotationSequence(from, to, &rep);
    FLIPSPAN_CHECK(seq.size() <= rep.bound, "rotation bound exceeded");
    j = {{"kind", "rotation"},
         {"length", seq.size()},
         {"bound", rep.bound},
         {"L", rep.count_l},
         {"R", rep.count_r},
         {"D", rep.count_d},
         {"J", rep.count_j},
         {"sequence", SequenceToJson(seq)}};
  } else {
    throw InvalidInput("sequence: --kind must be compatible or rotation");
  }
  out.Line(j);
  return 0;
}

int RunDiameter(int n, const Shared& s, Output& out) {
  FlipKind kind = ParseFlipKind(s.kind);
  DiameterRadius dr = ComputeDiameterRadius(DistanceMatrix(FlipGraph::Build(n, kind, s.budget)));
  out.Line({{"n", n},
            {"kind", ToString(kind)},
            {"diameter", dr.diameter},
            {"radius", dr.radius},
            {"extremal", {{"from", TreeToJson(dr.extremal_from)}, {"to", TreeToJson(dr.extremal_to)}}},
            {"center", TreeToJson(dr.center)}});
  return 0;
}

int RunVerify(const std::string& what, int n_max, int count, const Shared& s, Output& out) {
  bool broken = false;
  auto emit = [&](const SweepResult& r) {
    out.Line(SweepToJson(r));
    broken |= !r.ok();
  };
  if (what == "strong-happy" || what == "perfect-flip") {
    FlipKind kind = ParseFlipKind(s.kind);
    for (int n = 3; n <= n_max; ++n) {
      PropertyVerdict v = what == "strong-happy"
                              ? VerifyHappy(n, kind, HappyProperty::kStrongHappy)
                              : CheckPerfectFlipProperty(n, kind);
      out.Line(VerdictToJson(v));
      // Only the compatible strong happy property is guaranteed.
      if (!v.holds && what == "strong-happy" && kind == FlipKind::kCompatible) broken = true;
    }
  } else if (what == "parking") {
    emit(CheckParkingNormalization(count, n_max, s.seed));
  } else if (what == "lemma7") {
    for (int n = 3; n <= n_max; ++n) emit(CheckShortWideCounts(n));
  } else if (what == "bijection") {
    for (int n = 3; n <= n_max; ++n) emit(CheckGapBijection(n));
  } else if (what == "bounds") {
    FlipKind kind = ParseFlipKind(s.kind);
    if (kind != FlipKind::kCompatible && kind != FlipKind::kRotation) {
      throw InvalidInput("verify bounds: --kind must be compatible or rotation");
    }
    for (int n = 3; n <= n_max; ++n) {
      emit(kind == FlipKind::kCompatible ? CheckCompatibleBound(n) : CheckRotationBound(n));
    }
  } else {
    throw InvalidInput("verify: unknown property " + what);
  }
  return broken ? 3 : 0;
}

int RunFpt(const std::string& a, const std::string& b, int k, double epsilon,
           bool conjecture, const Shared& s, Output& out) {
  Tree from = ReadTree(a), to = ReadTree(b);
  if (from.n() != to.n()) throw InvalidInput("trees on different point sets");
  FptOptions opts;
  opts.node_budget = s.budget;
  opts.conjecture_mode = conjecture;
  FptResult r = FptDistance(from, to, ParseFlipKind(s.kind), k, opts, epsilon);
  Json j{{"found", r.found}, {"length", r.length()}};
  j["sequence"] = r.found ? SequenceToJson(r.sequence) : Json(nullptr);
  j["nodesExpanded"] = r.nodes_expanded;
  out.Line(j);
  return 0;
}

int RunExport(int n, const Shared& s, Output& out) {
  out.stream() << ToDot(FlipGraph::Build(n, ParseFlipKind(s.kind), s.budget));
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Flip distances of plane spanning trees on convex point sets"};
  app.require_subcommand(1);
  Shared shared;
  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--kind", shared.kind, "slide, rotation, compatible or unrestricted");
    sub->add_option("-o,--out", shared.out_path, "output file (default stdout)");
    sub->add_option("--budget", shared.budget, "search node cap");
    sub->add_option("--seed", shared.seed, "random seed");
  };

  int n = 0;
  bool stream = false;
  auto* enumerate = app.add_subcommand("enumerate", "count plane spanning trees");
  enumerate->add_option("n", n, "number of points")->required();
  enumerate->add_flag("--stream", stream, "also print every tree");
  add_shared(enumerate);

  std::string a, b;
  auto* distance = app.add_subcommand("distance", "exact flip distance");
  distance->add_option("a", a)->required()->check(CLI::ExistingFile);
  distance->add_option("b", b)->required()->check(CLI::ExistingFile);
  add_shared(distance);

  auto* sequence = app.add_subcommand("sequence", "constructive sequence with its bound");
  sequence->add_option("a", a)->required()->check(CLI::ExistingFile);
  sequence->add_option("b", b)->required()->check(CLI::ExistingFile);
  add_shared(sequence);

  auto* diameter = app.add_subcommand("diameter", "diameter and radius of the flip graph");
  diameter->add_option("n", n)->required();
  add_shared(diameter);

  std::string what;
  int n_max = 6, count = 1000;
  auto* verify = app.add_subcommand("verify", "exhaustive property checks");
  verify->add_option("property", what)
      ->required()
      ->check(CLI::IsMember({"strong-happy", "perfect-flip", "parking", "lemma7",
                             "bijection", "bounds"}));
  verify->add_option("--n-max", n_max, "largest n");
  verify->add_option("--count", count, "random instances (parking)");
  add_shared(verify);

  int k = 0;
  double epsilon = 1.0;
  bool conjecture = false;
  auto* fpt = app.add_subcommand("fpt", "is the distance at most k");
  fpt->add_option("a", a)->required()->check(CLI::ExistingFile);
  fpt->add_option("b", b)->required()->check(CLI::ExistingFile);
  fpt->add_option("--k", k)->required();
  fpt->add_option("--epsilon", epsilon);
  fpt->add_flag("--conjecture-mode", conjecture,
                "cut along every happy edge (relies on an open conjecture)");
  add_shared(fpt);

  bool dot = false;
  auto* exporter = app.add_subcommand("export", "write the flip graph");
  exporter->add_flag("--dot", dot, "Graphviz output")->required();
  exporter->add_option("--n", n)->required();
  add_shared(exporter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out(shared.out_path);
    if (*enumerate) return RunEnumerate(n, stream, out);
    if (*distance) return RunDistance(a, b, shared, out);
    if (*sequence) return RunSequence(a, b, shared, out);
    if (*diameter) return RunDiameter(n, shared, out);
    if (*verify) return RunVerify(what, n_max, count, shared, out);
    if (*fpt) return RunFpt(a, b, k, epsilon, conjecture, shared, out);
    if (*exporter) return RunExport(n, shared, out);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace
}  // namespace flipspan

int main(int argc, char** argv) { return flipspan::Main(argc, argv); }
