#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncalg/errors.hpp"
#include "ncalg/groebner.hpp"
#include "ncalg/hilbert.hpp"
#include "ncalg/morphisms.hpp"
#include "ncalg/presentation.hpp"
#include "ncalg/quadratic.hpp"
#include "ncalg/resolution.hpp"

namespace py = pybind11;
using namespace ncalg;

namespace {

py::object to_int(const BigInt& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_ints(const std::vector<BigInt>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_int(x));
    return out;
}

std::vector<std::string> strings(const std::vector<NCPolynomial>& v) {
    std::vector<std::string> out;
    for (const auto& p : v) out.push_back(p.to_string());
    return out;
}

MonomialOrder order_of(const Presentation& p, const std::string& spec) {
    return MonomialOrder::parse(p.alphabet_ptr(), spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finitely presented graded algebras over Q";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<RelationError>(m, "RelationError", base.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
    py::register_exception<SizeGuardError>(m, "SizeGuardError", base.ptr());
    py::register_exception<AlphabetMismatch>(m, "AlphabetMismatch", base.ptr());
    py::register_exception<ChainMismatch>(m, "ChainMismatch", base.ptr());
    py::register_exception<ModularDisagreement>(m, "ModularDisagreement", base.ptr());
    py::register_exception<SingularError>(m, "SingularError", base.ptr());

    py::class_<Presentation>(m, "Presentation")
        .def_property_readonly("name", &Presentation::name)
        .def_property_readonly("generators", [](const Presentation& p) { return p.alphabet().names(); })
        .def_property_readonly("relations", [](const Presentation& p) { return strings(p.relations()); })
        .def_property_readonly("is_quadratic", &Presentation::is_quadratic)
        .def("to_text", &Presentation::to_text)
        .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; })
        .def("__repr__", [](const Presentation& p) {
            return "<Presentation " + p.name() + ": " + std::to_string(p.generator_count()) + " generators, " +
                   std::to_string(p.relations().size()) + " relations>";
        });

    m.def("parse_presentation", [](const std::string& text) { return parse_presentation(text); }, py::arg("text"));
    m.def("mccool_cohomology", &mccool_cohomology, py::arg("n"));
    m.def("u_g", &u_g, py::arg("n"));
    m.def("u_g_mod_h", &u_g_mod_h);
    m.def("u_g_mod_h_dual", &u_g_mod_h_dual);
    m.def("free_algebra", &free_algebra, py::arg("generators"), py::arg("name") = "free");
    m.def(
        "column_sum_substitution",
        [](const Presentation& p, int n) { return apply_substitution(p, column_sum_substitution(p, n)); },
        py::arg("presentation"), py::arg("n"));

    py::class_<GroebnerBasis>(m, "GroebnerBasis")
        .def_property_readonly("truncation_degree", &GroebnerBasis::truncation_degree)
        .def_property_readonly("order", [](const GroebnerBasis& gb) { return gb.order().to_string(); })
        .def("size", py::overload_cast<std::size_t>(&GroebnerBasis::size, py::const_), py::arg("degree"))
        .def("__len__", py::overload_cast<>(&GroebnerBasis::size, py::const_))
        .def("elements", [](const GroebnerBasis& gb) { return strings(gb.elements()); })
        .def("obstructions",
             [](const GroebnerBasis& gb) {
                 std::vector<std::string> out;
                 for (const auto& w : gb.obstructions()) out.push_back(w.to_string(gb.presentation().alphabet()));
                 return out;
             })
        .def(
            "normal_form",
            [](const GroebnerBasis& gb, const std::string& expr) {
                return gb.normal_form(parse_expression(expr, gb.order())).to_string();
            },
            py::arg("expression"));

    m.def(
        "compute_gb",
        [](const Presentation& p, std::size_t max_degree, const std::string& order, unsigned threads) {
            GroebnerOptions o;
            o.threads = threads;
            py::gil_scoped_release release;
            return compute_gb(p, order_of(p, order), max_degree, o);
        },
        py::arg("presentation"), py::arg("max_degree"), py::arg("order") = "deglex:default", py::arg("threads") = 1);

    m.def(
        "hilbert_series",
        [](const GroebnerBasis& gb, std::size_t d) { return to_ints(hilbert_series(gb, d).coefficients); },
        py::arg("gb"), py::arg("max_degree"));
    m.def(
        "brute_force_hilbert",
        [](const Presentation& p, std::size_t d) { return to_ints(brute_force_hilbert(p, d).coefficients); },
        py::arg("presentation"), py::arg("max_degree"));

    m.def(
        "quadratic_dual", [](const Presentation& p) { return quadratic_dual(quadratic_data(p)); },
        py::arg("presentation"));
    m.def(
        "same_quadratic_span",
        [](const Presentation& a, const Presentation& b) { return quadratic_data(a).same_span(quadratic_data(b)); });

    m.def(
        "koszul_series_test",
        [](const std::vector<py::int_>& a, const std::vector<py::int_>& dual, std::size_t d) {
            auto conv = [](const std::vector<py::int_>& v) {
                HilbertSeries h;
                for (const auto& x : v) h.coefficients.emplace_back(py::str(x).cast<std::string>());
                return h;
            };
            KoszulDefectReport r = koszul_series_test(conv(a), conv(dual), d);
            py::dict out;
            out["product"] = to_ints(r.product);
            out["first_defect"] = r.first_defect ? py::cast(*r.first_defect) : py::none();
            out["conclusive"] = r.conclusive;
            out["dual_vanishes_in_degree3"] = r.dual_vanishes_in_degree3;
            return out;
        },
        py::arg("series"), py::arg("dual_series"), py::arg("max_degree"));

    m.def(
        "pbw_check",
        [](const Presentation& p, const std::string& order) {
            PbwResult r = pbw_check(p, order_of(p, order));
            py::dict out;
            out["pbw"] = r.pbw;
            out["order"] = r.order;
            if (r.witness) {
                out["witness"] = r.witness->word.to_string(p.alphabet());
                out["normal_form"] = r.witness_normal_form->to_string();
            }
            return out;
        },
        py::arg("presentation"), py::arg("order") = "deglex:default");

    m.def(
        "betti_numbers",
        [](const GroebnerBasis& gb, std::size_t max_i, std::size_t max_j, bool exact, std::size_t recheck) {
            BettiOptions o;
            o.strategy = exact ? BettiStrategy::Exact : BettiStrategy::Modular;
            o.exact_recheck_degree = recheck;
            BettiTable t;
            {
                py::gil_scoped_release release;
                t = betti_numbers(gb, max_i, max_j, o);
            }
            py::dict entries;
            for (const auto& [ij, v] : t.entries) entries[py::make_tuple(ij.first, ij.second)] = v;
            py::dict out;
            out["entries"] = entries;
            out["strategy"] = t.strategy_tag();
            return out;
        },
        py::arg("gb"), py::arg("max_i"), py::arg("max_j"), py::arg("exact") = false, py::arg("exact_recheck") = 0);

    m.def(
        "verify_morphism",
        [](const Presentation& src, const Presentation& tgt, const std::string& text) {
            MorphismSpec f = parse_morphism(text, src, tgt);
            auto gb = compute_gb(tgt, tgt.order(), std::max<std::size_t>(2, src.max_relation_degree()));
            return verify_morphism(f, gb).ok;
        },
        py::arg("source"), py::arg("target"), py::arg("map_text"));

    m.def(
        "quadratic_closure",
        [](const Presentation& ambient, const std::vector<std::string>& subgens, std::vector<std::string> names) {
            auto gb = compute_gb(ambient, ambient.order(), 2);
            std::vector<NCPolynomial> s;
            for (const auto& e : subgens) s.push_back(parse_expression(e, ambient.order()));
            return quadratic_closure_subalgebra(gb, s, std::move(names));
        },
        py::arg("ambient"), py::arg("subgenerators"), py::arg("names") = std::vector<std::string>{});
}
