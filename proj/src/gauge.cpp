#include "hfa/gauge.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

double sq(double x) { return x * x; }

}  // namespace

GaugeChi GaugeChi::zero() {
    return GaugeChi{[](cplx) { return std::array<cplx, 3>{cplx{}, cplx{}, cplx{}}; }};
}

GaugeChi GaugeChi::constant(double kappa) {
    return GaugeChi{[kappa](cplx) {
        return std::array<cplx, 3>{cplx{0.0, kappa}, cplx{}, cplx{}};
    }};
}

GaugeChi GaugeChi::winding() {
    return GaugeChi{[](cplx p) {
        if (std::abs(p) == 0.0) throw PoleError("winding gauge is singular at the origin");
        return std::array<cplx, 3>{std::log(p), 1.0 / p, -1.0 / (p * p)};
    }};
}

GaugeChi GaugeChi::square() {
    return GaugeChi{[](cplx p) {
        return std::array<cplx, 3>{p * p, 2.0 * p, cplx{2.0, 0.0}};
    }};
}

GaugeChi GaugeChi::holomorphic(std::function<std::array<cplx, 3>(cplx)> jets) {
    return GaugeChi{std::move(jets)};
}

VortexSample apply_gauge(const VortexSample& s, const GaugeChi& chi) {
    const auto h = chi.jets(s.pos);
    VortexSample out = s;
    out.a1 = s.a1 - 2.0 * h[1].imag();
    out.a2 = s.a2 - 2.0 * h[1].real();
    out.phi = std::exp(cplx{0.0, 2.0 * h[0].imag()}) * s.phi;
    return out;
}

LogJet2 apply_gauge_logjet(const LogJet2& lj, const std::array<cplx, 3>& hjet) {
    const cplx h1 = hjet[1], h2 = hjet[2];
    const cplx eg = std::exp(cplx{0.0, 2.0 * hjet[0].imag()});
    LogJet2 out = lj;
    out.lz = eg * lj.lz;
    out.lzb = lj.lzb + std::conj(h1);
    out.lz_z = eg * (h1 * lj.lz + lj.lz_z);
    out.lz_zb = eg * (lj.lz_zb - std::conj(h1) * lj.lz);
    out.lzb_z = lj.lzb_z;
    out.lzb_zb = lj.lzb_zb + std::conj(h2);
    return out;
}

std::pair<LogJet2, LogJet2> chi_pair_logjet(const GaugeChi& chi, const HyperPoint& p) {
    const auto h = chi.jets(p.coord);
    const double x = h[0].imag();  // chi itself
    const cplx eg = std::exp(cplx{0.0, 2.0 * x});
    const cplx den = eg - 1.0;
    if (std::abs(den) < 1e-10)
        throw DegenerateGauge("gauge factor equals 1; the generated pair collapses");

    const cplx h1 = h[1], h2 = h[2];
    const cplx mixed = eg * h1 * std::conj(h1) / (den * den);  // real: -|h'|^2/(4 sin^2 chi)

    LogJet2 plus;
    plus.model = p.model;
    plus.pos = p.coord;
    plus.value = std::sin(x) * std::exp(-h[0].real());
    plus.lz = h1 / den;
    plus.lzb = -eg * std::conj(h1) / den;
    plus.lz_z = h2 / den - eg * h1 * h1 / (den * den);
    plus.lz_zb = mixed;
    plus.lzb_z = std::conj(mixed);
    plus.lzb_zb = std::conj(plus.lz_z);

    LogJet2 minus;
    minus.model = p.model;
    minus.pos = p.coord;
    minus.value = std::sin(x) * std::exp(h[0].real());
    minus.lz = eg * h1 / den;
    minus.lzb = -std::conj(h1) / den;
    minus.lz_z = eg * h2 / den - eg * h1 * h1 / (den * den);
    minus.lz_zb = mixed;
    minus.lzb_z = std::conj(mixed);
    minus.lzb_zb = std::conj(minus.lz_z);

    return {plus, minus};
}

std::pair<VortexSample, VortexSample> pair_from_chi(const GaugeChi& chi, const HyperPoint& p) {
    const auto jets = chi_pair_logjet(chi, p);
    return {vortex_from_logjet(jets.first, VortexKind::VORTEX),
            vortex_from_logjet(jets.second, VortexKind::VORTEX)};
}

std::pair<double, double> fhp_T(cplx w) {
    if (std::abs(w.imag()) < 1e-12)
        throw BranchCutError("patch functions are not defined on the real axis");
    const double S = 2.0 / std::abs(1.0 + w);
    const double Sm = std::abs(w) * S;
    const double zz = w.imag() * S * S;  // z + conj(z) upstairs
    const double rad1 = std::max(0.0, sq(S + Sm) - 4.0);
    const double rad2 = std::max(0.0, 4.0 - sq(S - Sm));
    const double scale = 1.0 / (2.0 * std::pow(S, 5));
    const double t1 =
        scale * std::sqrt(rad1) * (0.25 * sq(4.0 - sq(S - Sm)) + sq(S * Sm) - 3.0 * sq(zz));
    const double t2 =
        scale * std::sqrt(rad2) * (0.25 * sq(4.0 - sq(S + Sm)) + sq(S * Sm) - 3.0 * sq(zz));
    return {t1, t2};
}

cplx fhp_f(cplx w) {
    if (std::abs(w.imag()) < 1e-12)
        throw BranchCutError("patch functions are not defined on the real axis");
    const cplx u = std::pow(w, 2.5);  // principal branch
    return w.imag() > 0.0 ? u : std::conj(u);
}

cplx fhp_gauge(cplx w) {
    const cplx f = fhp_f(w);
    const cplx fb = std::conj(f);
    const cplx den = (1.0 - f) * (1.0 - kI * fb);
    if (std::abs(den) < 1e-14) throw SingularGauge("patch factor degenerates at this point");
    return kI * (1.0 - fb) * (1.0 + kI * f) / den;
}

MonodromyFamily monodromy_family(double c) {
    return monodromy_family(c, std::exp(cplx{0.0, 2.0 * kPi * c}));
}

MonodromyFamily monodromy_family(double c, cplx eps) {
    if (c == 0.0) throw SpecError("family exponent must be nonzero");
    if (std::abs(std::abs(eps) - 1.0) > 1e-9)
        throw SpecError("cut-crossing factor must be unimodular");
    MonodromyFamily fam;
    fam.c = c;
    fam.eps = eps;
    fam.phi = SuperPotential::disc_family(c, {1.0, 0.0}, Branch::CUT_POS);
    fam.phi_prime = SuperPotential::disc_family(c, eps, Branch::CUT_POS);
    return fam;
}

cplx monodromy_gauge(const MonodromyFamily& fam, cplx w) {
    const cplx u = cpow_branch(w, fam.c, Branch::CUT_POS);
    const cplx v = std::conj(u);
    const cplx den1 = 1.0 - fam.eps * u;
    const cplx den2 = 1.0 - v;
    if (std::abs(den1) < 1e-12 || std::abs(den2) < 1e-12)
        throw PoleError("gauge factor has a pole at this point");
    return fam.eps * (1.0 - std::conj(fam.eps) * v) * (1.0 - u) / (den1 * den2);
}

cplx dbar_log_monodromy_gauge(const MonodromyFamily& fam, cplx w) {
    const cplx u = cpow_branch(w, fam.c, Branch::CUT_POS);
    const cplx v = std::conj(u);
    const cplx eb = std::conj(fam.eps);
    if (std::abs(1.0 - v) < 1e-12 || std::abs(1.0 - eb * v) < 1e-12)
        throw PoleError("gauge factor has a pole at this point");
    return fam.c * v / std::conj(w) * (1.0 / (1.0 - v) - eb / (1.0 - eb * v));
}

double loop_connection_integral(const MonodromyFamily& fam, double r, const QuadConfig& cfg) {
    if (!(r > 0.0) || r >= 1.0) throw SpecError("loop radius must lie in (0, 1)");
    const auto pullback = [&fam, r](double theta, cplx w) {
        const VortexSample s =
            vortex_from_potential(fam.phi, HyperPoint{Model::DISC, w}, VortexKind::VORTEX);
        return s.a1 * (-r * std::sin(theta)) + s.a2 * (r * std::cos(theta));
    };
    int n = std::max(64, cfg.n_theta);
    double err = 0.0;
    double value = loop_integral(pullback, r, n, &err);
    while (err > cfg.tol * std::max(1.0, std::abs(value))) {
        n *= 2;
        if (n > (1 << 20))
            throw QuadratureNotConverged("loop integral stalled at n = " + std::to_string(n));
        value = loop_integral(pullback, r, n, &err);
    }
    return value;
}

cplx holonomy(const MonodromyFamily& fam, double r, const QuadConfig& cfg) {
    return fam.eps * std::exp(cplx{0.0, loop_connection_integral(fam, r, cfg)});
}

double holonomy_parameter(double c) {
    if (c == 0.0) throw SpecError("family exponent must be nonzero");
    return (c - std::floor(c)) / 2.0;
}

}  // namespace hfa
