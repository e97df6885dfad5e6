#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hfa/errors.hpp"
#include "hfa/gauge.hpp"
#include "hfa/instanton.hpp"
#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/reduction.hpp"
#include "hfa/vortex.hpp"

namespace py = pybind11;
using namespace hfa;

namespace {

Quat to_quat(const std::array<double, 4>& a) { return Quat{a[0], a[1], a[2], a[3]}; }

Duality parse_duality(const std::string& s) {
    if (s == "sd") return Duality::SD;
    if (s == "asd") return Duality::ASD;
    throw SpecError("duality must be 'sd' or 'asd'");
}

Model parse_model(const std::string& s) {
    if (s == "disc") return Model::DISC;
    if (s == "halfplane") return Model::HALFPLANE;
    throw SpecError("model must be 'disc' or 'halfplane'");
}

VortexKind parse_kind(const std::string& s) {
    if (s == "vortex") return VortexKind::VORTEX;
    if (s == "antivortex") return VortexKind::ANTIVORTEX;
    throw SpecError("kind must be 'vortex' or 'antivortex'");
}

QuadConfig quad_with(double tol, int workers) {
    QuadConfig cfg;
    if (tol > 0.0) cfg.tol = tol;
    cfg.workers = workers;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<Error>(m, "HfaError", PyExc_RuntimeError);

    py::class_<SuperPotential>(m, "SuperPotential")
        .def("is4d", &SuperPotential::is4d)
        .def("to_json", [](const SuperPotential& p) { return potential_to_json(p); })
        .def("__repr__", [](const SuperPotential& p) {
            try {
                return std::string("SuperPotential(") + potential_to_json(p) + ")";
            } catch (const Error&) {
                return std::string("SuperPotential(<generic>)");
            }
        });

    m.def(
        "thooft",
        [](const std::vector<std::array<double, 4>>& centers, const std::vector<double>& scales) {
            std::vector<Quat> cs;
            cs.reserve(centers.size());
            for (const auto& c : centers) cs.push_back(to_quat(c));
            return SuperPotential::thooft(std::move(cs), scales);
        },
        py::arg("centers"), py::arg("scales"));
    m.def("halfplane_sym", &SuperPotential::halfplane_sym, py::arg("zeros"));
    m.def(
        "disc_family",
        [](double c, cplx eps, const std::string& branch) {
            Branch b = branch == "cut-pos" ? Branch::CUT_POS : Branch::CUT_NEG;
            return SuperPotential::disc_family(c, eps, b);
        },
        py::arg("c"), py::arg("eps") = cplx{1.0, 0.0}, py::arg("branch") = "cut-neg");
    m.def("fhp1", &SuperPotential::fhp1);
    m.def("fhp2", &SuperPotential::fhp2);
    m.def("potential_from_json", &potential_from_json, py::arg("text"));

    m.def(
        "harmonic_residual",
        [](const SuperPotential& p, const std::array<double, 4>& x) {
            return harmonic_residual4(p, to_quat(x));
        },
        py::arg("potential"), py::arg("x"));
    m.def(
        "harmonic_residual_hyp",
        [](const SuperPotential& p, cplx w, const std::string& model) {
            return harmonic_residual_hyp(p, w, parse_model(model));
        },
        py::arg("potential"), py::arg("w"), py::arg("model") = "disc");

    m.def(
        "curvature_densities",
        [](const SuperPotential& p, const std::array<double, 4>& x, const std::string& duality) {
            return curvature_densities(p, to_quat(x), parse_duality(duality));
        },
        py::arg("potential"), py::arg("x"), py::arg("duality") = "sd");
    m.def(
        "chern2",
        [](const SuperPotential& p, const std::string& duality, double tol, int workers) {
            return chern2(p, parse_duality(duality), quad_with(tol, workers));
        },
        py::arg("potential"), py::arg("duality") = "sd", py::arg("tol") = -1.0,
        py::arg("workers") = 0);

    m.def(
        "vortex_field",
        [](const SuperPotential& p, cplx coord, const std::string& model, const std::string& kind) {
            VortexSample s = vortex_from_potential(p, {parse_model(model), coord}, parse_kind(kind));
            return py::make_tuple(s.a1, s.a2, s.phi);
        },
        py::arg("potential"), py::arg("coord"), py::arg("model") = "disc",
        py::arg("kind") = "vortex");
    m.def(
        "vortex_residuals",
        [](const SuperPotential& p, cplx coord, const std::string& model, const std::string& kind) {
            return vortex_residuals(p, {parse_model(model), coord}, parse_kind(kind));
        },
        py::arg("potential"), py::arg("coord"), py::arg("model") = "disc",
        py::arg("kind") = "vortex");
    m.def(
        "chern1",
        [](const SuperPotential& p, const std::string& model, double tol, int workers) {
            return chern1(p, quad_with(tol, workers), parse_model(model));
        },
        py::arg("potential"), py::arg("model") = "disc", py::arg("tol") = -1.0,
        py::arg("workers") = 0);
    m.def(
        "higgs_zeros",
        [](const SuperPotential& p, cplx lo, cplx hi, int grid) {
            std::vector<std::pair<cplx, double>> out;
            for (const HiggsZero& z : higgs_zeros(p, lo, hi, grid))
                out.emplace_back(z.point.coord, z.order);
            return out;
        },
        py::arg("potential"), py::arg("lo"), py::arg("hi"), py::arg("grid") = 12);

    m.def(
        "reduced_action",
        [](const SuperPotential& p, double tol, int workers) {
            return reduced_action(p, quad_with(tol, workers));
        },
        py::arg("potential"), py::arg("tol") = -1.0, py::arg("workers") = 0);
    m.def(
        "chern_reduction_check",
        [](const SuperPotential& p, int workers) {
            return chern_reduction_check(p, quad_with(-1.0, workers));
        },
        py::arg("potential"), py::arg("workers") = 0);

    m.def(
        "holonomy",
        [](double c, double r) { return holonomy(monodromy_family(c), r); },
        py::arg("c"), py::arg("r"));
    m.def("holonomy_parameter", &holonomy_parameter, py::arg("c"));
}
