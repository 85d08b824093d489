#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sunflower/bounds.hpp"
#include "sunflower/error.hpp"
#include "sunflower/flora.hpp"
#include "sunflower/setcore.hpp"
#include "sunflower/sfsearch.hpp"
#include "sunflower/verify.hpp"

namespace py = pybind11;
using namespace sunflower;

namespace {

using PySet = std::vector<Atom>;

std::vector<FiniteSet> to_sets(const std::vector<PySet>& sets) {
    std::vector<FiniteSet> out;
    out.reserve(sets.size());
    for (const auto& s : sets) out.emplace_back(s);
    return out;
}

PySet from_set(const FiniteSet& s) { return PySet(s.begin(), s.end()); }

std::vector<PySet> from_family(const SetFamily& f) {
    std::vector<PySet> out;
    for (const auto& s : f.members()) out.push_back(from_set(s));
    return out;
}

py::object to_pyint(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object to_pyjson(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sunflower search, bounds and N_beta substructure tools";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<HorizonExceeded>(m, "HorizonExceeded", PyExc_RuntimeError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    m.def(
        "is_sunflower",
        [](const std::vector<PySet>& sets) -> std::optional<PySet> {
            auto core = is_sunflower(to_sets(sets));
            if (!core) return std::nullopt;
            return from_set(*core);
        },
        py::arg("sets"), "Common pairwise intersection of the sets, or None if they are not a sunflower.");

    m.def(
        "find_sunflower",
        [](const std::vector<PySet>& sets, std::size_t n, std::optional<std::size_t> k) -> py::object {
            SetFamily fam(to_sets(sets));
            auto w = greedy_sunflower(fam, n, k.value_or(fam.max_member_size()));
            if (!w) return py::none();
            py::dict d;
            d["core"] = from_set(w->core);
            d["members"] = w->members;
            return d;
        },
        py::arg("sets"), py::arg("n"), py::arg("k") = py::none(),
        "An n-sunflower in the family as {'core', 'members'}, or None.");

    m.def(
        "pad_family",
        [](const std::vector<PySet>& sets, std::size_t k) {
            auto padded = pad_family(SetFamily(to_sets(sets)), k);
            std::vector<PySet> out;
            for (auto i : padded.image) out.push_back(from_set(padded.family.members()[i]));
            return out;
        },
        py::arg("sets"), py::arg("k"), "Each set padded to exactly k atoms with fresh atoms, in input order.");

    py::class_<SfAnswer>(m, "SfAnswer")
        .def_property_readonly("exact", &SfAnswer::exact)
        .def_readonly("value", &SfAnswer::value)
        .def_readonly("nodes", &SfAnswer::nodes)
        .def_property_readonly("witness",
                               [](const SfAnswer& a) -> std::optional<std::vector<PySet>> {
                                   if (!a.extremal_witness) return std::nullopt;
                                   return from_family(*a.extremal_witness);
                               })
        .def("__repr__", [](const SfAnswer& a) {
            return "SfAnswer(value=" + std::to_string(a.value) + ", exact=" + (a.exact() ? "True" : "False") + ")";
        });

    m.def(
        "exact_sf",
        [](std::size_t n, std::size_t k, bool exactly, std::size_t max_family, std::size_t threads,
           std::optional<double> time_limit) {
            SearchBudget budget;
            budget.max_family = max_family;
            budget.threads = threads;
            budget.time_hint = time_limit;
            py::gil_scoped_release release;
            return exact_sf(n, k, budget, exactly ? FamilyShape::Exactly : FamilyShape::AtMost);
        },
        py::arg("n"), py::arg("k"), py::arg("exactly") = false, py::arg("max_family") = 64, py::arg("threads") = 1,
        py::arg("time_limit") = py::none(), "Least size forcing an n-sunflower among families of k-sets.");

    m.def(
        "er_bound", [](std::size_t n, std::size_t k) { return to_pyint(er_bound(n, k)); }, py::arg("n"),
        py::arg("k"), "k! (n-1)^k");

    m.def(
        "thm_bound",
        [](const std::string& alpha, std::size_t n, std::uint64_t k) {
            return to_pyint(thm_bound(MonotoneMap::parse(alpha), n, k));
        },
        py::arg("alpha"), py::arg("n"), py::arg("k"), "alpha(k) (n-1)^alpha(k) for an alpha spec such as 'k+3'.");

    m.def(
        "synth_beta",
        [](const std::string& alpha, std::uint64_t checked_k) {
            return to_pyjson(io::encode(synth_beta(MonotoneMap::parse(alpha), checked_k).certificate));
        },
        py::arg("alpha"), py::arg("checked_k") = 10000, "Certified cycle lengths for the given alpha spec.");

    m.def(
        "nbeta_size",
        [](const std::vector<std::uint64_t>& beta, std::size_t atoms) {
            return to_pyint(nbeta_size(BetaFn(beta), atoms));
        },
        py::arg("beta"), py::arg("atoms"), "Number of elements of a substructure over a base of the given size.");

    m.def(
        "run_suite",
        [](const std::string& suite, std::size_t cases, std::uint64_t seed) {
            SuiteReport report;
            {
                py::gil_scoped_release release;
                if (suite == "invariants")
                    report = run_invariant_suite({cases}, seed);
                else if (suite == "proposition")
                    report = run_proposition_suite({});
                else if (suite == "theorem") {
                    TheoremParams p;
                    p.cases = cases;
                    report = run_theorem_suite(p, seed);
                } else
                    throw PreconditionError("unknown suite: " + suite);
            }
            return to_pyjson(report.to_json());
        },
        py::arg("suite"), py::arg("cases") = 100, py::arg("seed") = 0,
        "Runs 'invariants', 'proposition' or 'theorem' and returns the report as a dict.");
}
