#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdisc/berezin.hpp"
#include "qdisc/forms.hpp"
#include "qdisc/fourier.hpp"
#include "qdisc/harmonic.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"
#include "qdisc/qspecial.hpp"
#include "qdisc/quad.hpp"
#include "qdisc/rep.hpp"
#include "qdisc/serialize.hpp"
#include "qdisc/verify.hpp"

namespace py = pybind11;
using namespace qdisc;

namespace {

// json crosses the boundary as text; the Python side calls json.loads
std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_qdisc, m) {
    m.doc() = "Quantum disc: noncommutative polynomials, q-special functions, harmonic analysis";

    auto base = py::register_exception<Error>(m, "QdiscError");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<ParameterPoleError>(m, "ParameterPoleError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<SummabilityError>(m, "SummabilityError", base.ptr());
    py::register_exception<AngularOverflow>(m, "AngularOverflow", base.ptr());
    py::register_exception<NotPolynomial>(m, "NotPolynomial", base.ptr());
    py::register_exception<DegreeCapExceeded>(m, "DegreeCapExceeded", base.ptr());
    py::register_exception<DegreeOverflow>(m, "DegreeOverflow", PyExc_OverflowError);
    py::register_exception<SyntaxError>(m, "ExprSyntaxError", PyExc_SyntaxError);

    py::class_<QContext>(m, "QContext")
        .def(py::init([](double q, int n, int mm) {
                 QContext c;
                 c.q = q;
                 c.radial_levels = n;
                 c.angular_cutoff = mm;
                 c.validate();
                 return c;
             }),
             py::arg("q") = 0.5, py::arg("N") = 64, py::arg("M") = 16)
        .def_readwrite("q", &QContext::q)
        .def_readwrite("N", &QContext::radial_levels)
        .def_readwrite("M", &QContext::angular_cutoff)
        .def("y", &QContext::y);

    py::class_<NormalPoly>(m, "NormalPoly")
        .def(py::init<double>(), py::arg("q") = 0.5)
        .def_static("monomial", &NormalPoly::monomial, py::arg("q"), py::arg("j"), py::arg("k"), py::arg("c") = cplx(1.0))
        .def_static("constant", &NormalPoly::constant)
        .def_static("z", &NormalPoly::z)
        .def_static("zstar", &NormalPoly::zstar)
        .def_static("y", &NormalPoly::y)
        .def_property_readonly("q", &NormalPoly::q)
        .def("terms",
             [](const NormalPoly& f) {
                 std::map<std::pair<int, int>, cplx> out(f.terms().begin(), f.terms().end());
                 return out;
             })
        .def("coeff", &NormalPoly::coeff)
        .def("degree", &NormalPoly::degree)
        .def("max_abs", &NormalPoly::max_abs)
        .def("pow", &NormalPoly::pow)
        .def("star", [](const NormalPoly& f) { return involution(f); })
        .def("to_json", [](const NormalPoly& f) { return dump(to_json(f)); })
        .def("__str__", [](const NormalPoly& f) { return f.to_string(); })
        .def("__repr__", [](const NormalPoly& f) { return "NormalPoly(" + f.to_string() + ")"; })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def("__mul__", [](const NormalPoly& f, cplx c) { return f * c; })
        .def("__rmul__", [](const NormalPoly& f, cplx c) { return c * f; });

    m.def("parse", &parse_expr, py::arg("text"), py::arg("q") = 0.5, py::arg("degree_cap") = 32);
    m.def("involution", py::overload_cast<const NormalPoly&>(&involution));
    m.def("max_abs_diff", py::overload_cast<const NormalPoly&, const NormalPoly&>(&max_abs_diff));
    m.def("normal_poly_from_json", [](const std::string& s) { return normal_poly_from_json(json::parse(s)); });
    m.def("boundary_restrict", &boundary_restrict);

    py::class_<PolarFunction>(m, "PolarFunction")
        .def(py::init<const QContext&>())
        .def_static("indicator", &PolarFunction::indicator, py::arg("ctx"), py::arg("mode"), py::arg("level"),
                    py::arg("value") = cplx(1.0))
        .def_property_readonly("ctx", &PolarFunction::ctx)
        .def("modes", &PolarFunction::modes)
        .def("samples", &PolarFunction::samples)
        .def("sample", &PolarFunction::sample)
        .def("set_mode", &PolarFunction::set_mode)
        .def("max_abs", &PolarFunction::max_abs)
        .def("max_abs_diff", &PolarFunction::max_abs_diff)
        .def("to_json", [](const PolarFunction& f) { return dump(to_json(f)); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__mul__", [](const PolarFunction& f, cplx c) { return f * c; })
        .def("__rmul__", [](const PolarFunction& f, cplx c) { return c * f; });

    m.def("to_polar", &to_polar);
    m.def("from_polar", &from_polar);
    m.def("polar_from_json", [](const std::string& s) { return polar_from_json(json::parse(s)); });
    m.def("t_matrix", [](const NormalPoly& f, const QContext& c) { return t_matrix(f, c).entries; });

    // q-special
    m.def("qpoch", &qpoch);
    m.def("qpoch_inf", &qpoch_inf, py::arg("t"), py::arg("q"), py::arg("tol") = 1e-16);
    m.def("qgamma", &qgamma, py::arg("x"), py::arg("q"), py::arg("tol") = 1e-16);
    m.def("c_function", &c_function, py::arg("l"), py::arg("q"), py::arg("tol") = 1e-16);
    m.def("gauss_binomial", &gauss_binomial);
    m.def(
        "basic_hyper",
        [](const std::vector<cplx>& up, const std::vector<cplx>& lo, double q, cplx z) { return basic_hyper(up, lo, q, z); },
        py::arg("upper"), py::arg("lower"), py::arg("q"), py::arg("z"));
    m.def("jackson_integral", &jackson_integral, py::arg("f"), py::arg("q"), py::arg("tol") = 1e-16,
          py::arg("max_terms") = 200000);

    // integrals
    m.def("mu", py::overload_cast<const NormalPoly&>(&mu));
    m.def("mu_polar", py::overload_cast<const PolarFunction&>(&mu));
    m.def("nu", [](const PolarFunction& f) { return nu(f).value; });
    m.def("stokes_check", [](const NormalPoly& f) {
        StokesResult r = stokes_check(DiffForm::left_dz(f));
        return py::make_tuple(r.interior, r.boundary, r.residual);
    }, "interior and boundary sides of Stokes' formula for the form dz f");

    // harmonic analysis
    m.def("lambda_of_l", &lambda_of_l);
    m.def("box_apply", &box_apply);
    m.def("poisson_solve", [](const PolarFunction& f) { return poisson_solve_linear(f); });
    m.def("poisson_solve_kernel", [](const PolarFunction& f) { return poisson_solve(f, green_kernel(f.ctx())); });
    m.def("dbar_solve", [](const PolarFunction& f) { return dbar_solve_linear(f); });
    m.def("bergman_project", &bergman_project);
    m.def("spherical_phi", &spherical_phi);
    m.def("poisson_extend", &poisson_extend);
    m.def("rayleigh_range", [](int mm, const QContext& c) {
        RayleighRange r = rayleigh_range(sector_operator(mm, c));
        return py::make_tuple(r.min, r.max);
    });

    // Fourier transform
    py::class_<FourierImage>(m, "FourierImage")
        .def_readonly("nodes", &FourierImage::nodes)
        .def_readonly("weights", &FourierImage::weights)
        .def_readonly("values", &FourierImage::values);
    m.def("fourier_forward", &fourier_forward, py::arg("u"), py::arg("nodes") = 128);
    m.def("fourier_inverse", &fourier_inverse);
    m.def("spectral_inner", &spectral_inner);
    m.def("nu_inner", &nu_inner);
    m.def("plancherel_density", &plancherel_density);

    // Berezin
    m.def("star_product", [](const NormalPoly& a, const NormalPoly& b, int K) { return star_product(a, b, K).coeffs; },
          py::arg("f1"), py::arg("f2"), py::arg("K"));
    m.def("c_k", &c_k_extract);

    m.def("suite_names", &suite_names);
    m.def(
        "verify",
        [](const std::string& suite, double q, int n, int mm, int order, int nodes, std::optional<double> tol) {
            VerifyConfig cfg;
            cfg.q = q;
            cfg.n = n;
            cfg.m = mm;
            cfg.order = order;
            cfg.nodes = nodes;
            cfg.tol = tol;
            return dump(to_json(run_verify(suite, cfg)));
        },
        py::arg("suite") = "all", py::arg("q") = 0.5, py::arg("N") = 64, py::arg("M") = 16, py::arg("order") = 4,
        py::arg("nodes") = 128, py::arg("tol") = std::nullopt);
}
