// Python bindings. Trees cross the boundary as (n, [(a, b), ...]); results
// come back as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flipspan/compat_bound.h"
#include "flipspan/fpt.h"
#include "flipspan/happy.h"
#include "flipspan/json_io.h"
#include "flipspan/oracle.h"
#include "flipspan/rot_bound.h"

namespace py = pybind11;

namespace flipspan {
namespace {

using EdgeList = std::vector<std::pair<int, int>>;

Tree ToTree(int n, const EdgeList& edges) {
  std::vector<Chord> chords;
  for (auto [a, b] : edges) chords.emplace_back(a, b);
  return Tree::FromEdges(n, chords);
}

EdgeList FromTree(const Tree& t) {
  EdgeList out;
  for (const Chord& c : t.Edges()) out.emplace_back(c.a, c.b);
  return out;
}

py::list Steps(const FlipSequence& s) {
  py::list out;
  for (const FlipStep& st : s.steps) {
    out.append(py::make_tuple(py::make_tuple(st.removed.a, st.removed.b),
                              py::make_tuple(st.added.a, st.added.b)));
  }
  return out;
}

py::object FromJson(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace
}  // namespace flipspan

PYBIND11_MODULE(_flipspan, m) {
  using namespace flipspan;
  m.doc() = "Flip distances of plane spanning trees on convex point sets";

  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<InvariantViolation> invariant_exc(m, "InvariantViolation",
                                                         PyExc_AssertionError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      PyErr_SetString(budget_exc.ptr(), e.what());
    } catch (const InvariantViolation& e) {
      PyErr_SetString(invariant_exc.ptr(), e.what());
    } catch (const InvalidInput& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("count_trees", &CountTrees, py::arg("n"));
  m.def(
      "all_trees", [](int n) {
        std::vector<EdgeList> out;
        EnumerateTrees(n, [&](const Tree& t) { out.push_back(FromTree(t)); });
        return out;
      },
      py::arg("n"));
  m.def(
      "validate_tree",
      [](int n, const EdgeList& edges) {
        std::vector<Chord> chords;
        for (auto [a, b] : edges) chords.emplace_back(a, b);
        TreeValidation v = ValidateTree(chords, n);
        return v.ok() ? std::string() : v.defect->Describe();
      },
      py::arg("n"), py::arg("edges"), "Empty string when valid, else the defect.");
  m.def(
      "distance",
      [](int n, const EdgeList& a, const EdgeList& b, const std::string& kind) {
        DistanceReport r = Distance(ToTree(n, a), ToTree(n, b), ParseFlipKind(kind));
        py::dict out;
        out["distance"] = r.distance;
        out["steps"] = Steps(r.witness);
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"), py::arg("kind") = "unrestricted");
  m.def(
      "diameter_radius",
      [](int n, const std::string& kind) {
        DiameterRadius dr = ComputeDiameterRadius(n, ParseFlipKind(kind));
        return py::make_tuple(dr.diameter, dr.radius);
      },
      py::arg("n"), py::arg("kind") = "unrestricted");
  m.def(
      "compatible_sequence",
      [](int n, const EdgeList& a, const EdgeList& b) {
        CompatibleReport rep;
        FlipSequence s = CompatibleSequence(ToTree(n, a), ToTree(n, b), &rep);
        py::dict out;
        out["length"] = s.size();
        out["bound"] = rep.params.BoundString();
        out["within_bound"] = rep.params.Admits(s.size());
        out["steps"] = Steps(s);
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"));
  m.def(
      "rotation_sequence",
      [](int n, const EdgeList& a, const EdgeList& b) {
        RotationReport rep;
        FlipSequence s = RotationSequence(ToTree(n, a), ToTree(n, b), &rep);
        py::dict out;
        out["length"] = s.size();
        out["bound"] = rep.bound;
        out["steps"] = Steps(s);
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"));
  m.def(
      "fpt",
      [](int n, const EdgeList& a, const EdgeList& b, int k, const std::string& kind,
         double epsilon, bool conjecture_mode, std::int64_t node_budget) {
        FptOptions opts;
        opts.conjecture_mode = conjecture_mode;
        opts.node_budget = node_budget;
        FptResult r = FptDistance(ToTree(n, a), ToTree(n, b), ParseFlipKind(kind), k, opts,
                                  epsilon);
        py::dict out;
        out["found"] = r.found;
        out["length"] = r.length();
        out["steps"] = r.found ? py::object(Steps(r.sequence)) : py::object(py::none());
        out["nodes_expanded"] = r.nodes_expanded;
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"), py::arg("k"),
      py::arg("kind") = "unrestricted", py::arg("epsilon") = 1.0,
      py::arg("conjecture_mode") = false, py::arg("node_budget") = kDefaultNodeBudget);
  m.def(
      "contract",
      [](int n, const EdgeList& a, const EdgeList& b) {
        ReducedInstance r = Contract(ToTree(n, a), ToTree(n, b));
        py::dict out;
        out["m"] = r.m();
        out["in"] = FromTree(r.in);
        out["tar"] = FromTree(r.tar);
        out["original_label"] = std::vector<int>(r.original_label.begin() + 1,
                                                 r.original_label.end());
        return out;
      },
      py::arg("n"), py::arg("a"), py::arg("b"));
  m.def(
      "verify_strong_happy",
      [](int n, const std::string& kind) {
        return FromJson(VerdictToJson(
            VerifyHappy(n, ParseFlipKind(kind), HappyProperty::kStrongHappy)));
      },
      py::arg("n"), py::arg("kind") = "compatible");
}
