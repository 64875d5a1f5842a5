// Python bindings for the core library: constructors, verification and
// derived structures. Matrices cross the boundary as complex numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wka/constructors.hpp"
#include "wka/duality.hpp"
#include "wka/io.hpp"

namespace py = pybind11;
using namespace wka;

namespace {

py::dict report_dict(const VerificationReport& r)
{
    py::dict checks;
    for (const auto& [name, c] : r.checks()) {
        py::dict d;
        d["pass"] = c.pass;
        d["residual"] = c.residual;
        d["flag"] = c.flag;
        if (!c.flag)
            d["threshold"] = c.threshold;
        d["note"] = c.note;
        checks[py::str(name)] = d;
    }
    return checks;
}

Groupoid groupoid_from_string(const std::string& s)
{
    if (s.rfind("pair:", 0) == 0)
        return pair_groupoid(std::stoul(s.substr(5)));
    if (s.rfind("cyclic:", 0) == 0)
        return cyclic_group(std::stoul(s.substr(7)));
    return groupoid_from_tables(parse_groupoid_tables(s));
}

} // namespace

PYBIND11_MODULE(_wka, m)
{
    m.doc() = "Finite-dimensional weak Kac algebras";

    static py::exception<Error> base(m, "WkaError", PyExc_ValueError);
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("abs_tol"), py::arg("rel_cap") = 1e-6)
        .def_readwrite("abs_tol", &Tolerance::abs_tol)
        .def_readwrite("rel_cap", &Tolerance::rel_cap);

    py::class_<VerificationReport>(m, "Report")
        .def_property_readonly("passed", &VerificationReport::passed)
        .def_property_readonly("max_residual", &VerificationReport::max_residual)
        .def_property_readonly("tolerance", &VerificationReport::tolerance)
        .def_property_readonly("checks", &report_dict)
        .def("to_json", [](const VerificationReport& r) { return r.to_json().dump(); })
        .def("__str__", &VerificationReport::to_text)
        .def("__len__", &VerificationReport::size);

    py::class_<Groupoid>(m, "Groupoid")
        .def_property_readonly("size", &Groupoid::size)
        .def_property_readonly("units", &Groupoid::units)
        .def_property_readonly("labels", &Groupoid::labels)
        .def("compose", [](const Groupoid& g, std::size_t x, std::size_t y) -> py::object {
            const std::size_t z = g.compose(x, y);
            return z == Groupoid::npos ? py::none() : py::cast(z);
        })
        .def("is_group", &Groupoid::is_group);
    m.def("pair_groupoid", &pair_groupoid, py::arg("n"));
    m.def("cyclic_group", &cyclic_group, py::arg("n"));
    m.def("groupoid", &groupoid_from_string, py::arg("text"),
          "'pair:N', 'cyclic:N' or the text of a groupoid table");

    py::class_<WeakKac>(m, "WeakKac")
        .def_readwrite("name", &WeakKac::name)
        .def_property_readonly("dim", &WeakKac::dim)
        .def_property_readonly("block_shape",
                               [](const WeakKac& w) { return w.algebra().block_shape(); })
        .def_property_readonly("coproduct", &WeakKac::coproduct_matrix,
                               "dim^2 x dim; column x is Delta(e_x) flattened row-major")
        .def_property_readonly("antipode", &WeakKac::antipode)
        .def_property_readonly("counit", &WeakKac::counit)
        .def_property_readonly("unit", [](const WeakKac& w) { return w.algebra().unit(); })
        .def("e", &WeakKac::e)
        .def("multiply", [](const WeakKac& w, const CVector& x, const CVector& y) {
            return w.algebra().multiply(x, y);
        })
        .def("star", [](const WeakKac& w, const CVector& x) { return w.algebra().star(x); })
        .def("delta", &WeakKac::delta)
        .def("with_counit", &WeakKac::with_counit)
        .def("__repr__", [](const WeakKac& w) {
            return "<WeakKac " + (w.name.empty() ? std::string("-") : w.name) + " dim " +
                   std::to_string(w.dim()) + ">";
        });

    const auto tol = py::arg("tol") = Tolerance{};

    m.def("groupoid_algebra", &groupoid_algebra, py::arg("groupoid"), tol);
    m.def("groupoid_function_algebra", &groupoid_function_algebra, py::arg("groupoid"));
    m.def("elementary", &elementary, py::arg("shape"));
    m.def("dual_elementary", &dual_elementary, py::arg("shape"));
    m.def("elementary_twist",
          [](const std::vector<std::size_t>& shape, const CMatrix& lambda, const Tolerance& t) {
              return elementary_twist(shape, lambda, t).w;
          },
          py::arg("shape"), py::arg("cocycle"), tol);
    m.def("random_cocycle",
          [](std::size_t blocks, unsigned seed) {
              std::mt19937_64 rng(seed);
              return random_cocycle(blocks, rng);
          },
          py::arg("blocks"), py::arg("seed") = 0);
    m.def("untwist_isomorphism",
          [](const std::vector<std::size_t>& shape, const CMatrix& lambda, const Tolerance& t) {
              return untwist_isomorphism(elementary_twist(shape, lambda, t));
          },
          py::arg("shape"), py::arg("cocycle"), tol);
    m.def("cube_family", &cube_family, py::arg("n"));
    m.def("cube_index", &cube_index, py::arg("n"), py::arg("k"), py::arg("i"), py::arg("j"));
    m.def("shift_crossed_product",
          [](std::size_t n, const Tolerance& t) {
              return crossed_product(groupoid_function_algebra(pair_groupoid(n)),
                                     shift_action(n), t);
          },
          py::arg("n"), tol);
    m.def("tensor_product", &tensor_product);
    m.def("direct_sum", &direct_sum);
    m.def("catalog", &catalog, py::arg("with_duals") = true, py::arg("seed") = 2024u, tol);

    m.def("verify", &verify_weak_kac, py::arg("w"), tol);
    m.def("invariant_report", &invariant_report, py::arg("w"), tol);
    m.def("check_morphism", &check_morphism, py::arg("w1"), py::arg("w2"), py::arg("pi"), tol);
    m.def("counital_maps",
          [](const WeakKac& w, const Tolerance& t) {
              auto c = counital_maps(w, t);
              return py::make_tuple(c.target, c.source);
          },
          py::arg("w"), tol, "(eps_t, eps_s) as matrices");
    m.def("cartan_dims",
          [](const WeakKac& w, const Tolerance& t) {
              auto c = cartan_subalgebras(w, t);
              return py::make_tuple(c.ns.dim(), c.nt.dim());
          },
          py::arg("w"), tol, "(dim N_s, dim N_t)");
    m.def("haar_projection",
          [](const WeakKac& w, const Tolerance& t) { return haar_projection(w, t).p.coeffs; },
          py::arg("w"), tol);
    m.def("normalized_haar_trace",
          [](const WeakKac& w, const Tolerance& t) {
              return normalized_haar_trace(w, t, false).phi.coeffs;
          },
          py::arg("w"), tol);
    m.def("fusion_ring",
          [](const WeakKac& w, const Tolerance& t) {
              auto f = fusion_ring(w, t);
              py::dict d;
              d["multiplicities"] = f.n;
              d["support"] = f.support;
              d["involution"] = f.involution;
              d["report"] = f.report;
              return d;
          },
          py::arg("w"), tol);
    m.def("check_generalized_kac",
          py::overload_cast<const WeakKac&, const CVector&, const Tolerance&>(&check_generalized_kac),
          py::arg("w"), py::arg("phi"), tol);
    m.def("recover_counit",
          [](const WeakKac& w, const Tolerance& t) -> py::object {
              auto r = check_kac_bimodule(w.algebra_ptr(), w.coproduct_matrix(), w.antipode(), t);
              if (!r.counit)
                  return py::none();
              return py::cast(*r.counit);
          },
          py::arg("w"), tol, "eps recovered from (M, Delta, S), or None");
    m.def("counit_from_haar",
          [](const WeakKac& w, const CVector& phi, const Tolerance& t) {
              return counit_from_haar(w.algebra_ptr(), w.coproduct_matrix(), w.antipode(), phi, t);
          },
          py::arg("w"), py::arg("phi"), tol);
    m.def("dual", &dual, py::arg("w"), tol);
    m.def("biduality_report",
          [](const WeakKac& w, const Tolerance& t) { return biduality_isomorphism(w, t).report; },
          py::arg("w"), tol);
    m.def("triviality",
          [](const WeakKac& w) {
              auto t = triviality(w);
              py::dict d;
              d["commutator"] = t.commutator;
              d["cocommutator"] = t.cocommutator;
              d["unit_defect"] = t.unit_defect;
              return d;
          },
          py::arg("w"));

    m.def("to_text", [](const WeakKac& w) { return to_text(serialize(w)); });
    m.def("from_text", [](const std::string& s) { return deserialize(parse_wka(s)); });
    m.def("read_file", &read_wka_file, py::arg("path"));
    m.def("write_file",
          [](const std::string& path, const WeakKac& w) { write_wka_file(path, w); },
          py::arg("path"), py::arg("w"));
}
