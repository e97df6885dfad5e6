#include "hfa/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

double sq(double x) { return x * x; }

// Metric term of the dbar operator: m with dbar log(lambda^-1) = m dzbar,
// so beta = dbar log phi + m absorbs the conformal factor.
cplx metric_term(Model model, cplx p) {
    if (model == Model::HALFPLANE) return cplx{0.0, -0.5 / p.imag()};
    return (1.0 + p) / ((1.0 - std::norm(p)) * (1.0 + std::conj(p)));
}

void check_domain(Model model, cplx p) {
    if (model == Model::HALFPLANE) {
        if (!(p.imag() > 0.0)) throw SpecError("vortex: half-plane point needs Im z > 0");
    } else if (!(std::norm(p) < 1.0)) {
        throw SpecError("vortex: disc point needs |w| < 1");
    }
}

}  // namespace

HyperPoint disc_map(const HyperPoint& p) {
    if (p.model == Model::HALFPLANE) return {Model::DISC, disc_from_halfplane(p.coord)};
    return {Model::HALFPLANE, halfplane_from_disc(p.coord)};
}

VortexSample vortex_from_logjet(const LogJet2& lj, VortexKind kind) {
    check_domain(lj.model, lj.pos);
    const cplx p = lj.pos;
    const cplx m = metric_term(lj.model, p);

    VortexSample out;
    out.model = lj.model;
    out.pos = p;

    if (kind == VortexKind::VORTEX) {
        const cplx beta = lj.lzb + m;
        out.a1 = 2.0 * beta.imag();
        out.a2 = -2.0 * beta.real();
        if (lj.model == Model::HALFPLANE) {
            out.phi = kI * (p - std::conj(p)) * lj.lz;
        } else {
            const cplx q = (1.0 + p) / (1.0 + std::conj(p));
            out.phi = -kI * (1.0 - std::norm(p)) * q * lj.lz;
        }
    } else {
        const cplx gamma = lj.lz + std::conj(m);
        out.a1 = 2.0 * gamma.imag();
        out.a2 = 2.0 * gamma.real();
        if (lj.model == Model::HALFPLANE) {
            out.phi = -kI * (p - std::conj(p)) * lj.lzb;
        } else {
            const cplx qb = (1.0 + std::conj(p)) / (1.0 + p);
            out.phi = -kI * (1.0 - std::norm(p)) * qb * lj.lzb;
        }
    }
    return out;
}

std::pair<double, double> residuals_from_logjet(const LogJet2& lj, VortexKind kind) {
    check_domain(lj.model, lj.pos);
    const cplx p = lj.pos;
    const cplx m = metric_term(lj.model, p);
    const VortexSample vs = vortex_from_logjet(lj, kind);
    const double lambda = (lj.model == Model::HALFPLANE) ? 1.0 / p.imag()
                                                         : 2.0 / (1.0 - std::norm(p));

    cplx first;   // dbar_a Phi (vortex) resp. d_a Phi' (anti-vortex) coefficient
    double curv;  // *iF_a in the fixed orientation
    if (kind == VortexKind::VORTEX) {
        const cplx beta = lj.lzb + m;
        cplx dbar_phi;
        if (lj.model == Model::HALFPLANE) {
            dbar_phi = kI * ((p - std::conj(p)) * lj.lz_zb - lj.lz);
        } else {
            const cplx k = (1.0 - std::norm(p)) * (1.0 + p) / (1.0 + std::conj(p));
            const cplx dbar_k = -(1.0 + p) * (1.0 + p) /
                                ((1.0 + std::conj(p)) * (1.0 + std::conj(p)));
            dbar_phi = -kI * (dbar_k * lj.lz + k * lj.lz_zb);
        }
        first = dbar_phi + beta * vs.phi;
        const double re_dbeta = lj.lzb_z.real() + ((lj.model == Model::HALFPLANE)
                                                       ? 0.25 / sq(p.imag())
                                                       : 1.0 / sq(1.0 - std::norm(p)));
        curv = 4.0 / sq(lambda) * re_dbeta;
        const double second = std::abs(curv - (1.0 - std::norm(vs.phi)));
        return {std::sqrt(2.0) * std::abs(first) / lambda, second};
    }

    const cplx gamma = lj.lz + std::conj(m);
    cplx d_phi;
    if (lj.model == Model::HALFPLANE) {
        d_phi = -kI * (lj.lzb + (p - std::conj(p)) * lj.lzb_z);
    } else {
        const cplx kb = (1.0 - std::norm(p)) * (1.0 + std::conj(p)) / (1.0 + p);
        const cplx d_kb =
            -(1.0 + std::conj(p)) * (1.0 + std::conj(p)) / ((1.0 + p) * (1.0 + p));
        d_phi = -kI * (d_kb * lj.lzb + kb * lj.lzb_z);
    }
    first = d_phi + gamma * vs.phi;
    const double re_dgamma = lj.lz_zb.real() + ((lj.model == Model::HALFPLANE)
                                                    ? 0.25 / sq(p.imag())
                                                    : 1.0 / sq(1.0 - std::norm(p)));
    curv = -4.0 / sq(lambda) * re_dgamma;
    const double second = std::abs(curv - (std::norm(vs.phi) - 1.0));
    return {std::sqrt(2.0) * std::abs(first) / lambda, second};
}

VortexSample vortex_from_potential(const SuperPotential& phi, const HyperPoint& p,
                                   VortexKind kind) {
    if (phi.is4d()) throw SpecError("vortex: needs a 2D family");
    return vortex_from_logjet(log_jet(phi, p.coord, p.model), kind);
}

std::pair<double, double> vortex_residuals(const SuperPotential& phi, const HyperPoint& p,
                                           VortexKind kind) {
    if (phi.is4d()) throw SpecError("vortex: needs a 2D family");
    return residuals_from_logjet(log_jet(phi, p.coord, p.model), kind);
}

double chern1(const SuperPotential& phi, const QuadConfig& cfg, Model model) {
    if (phi.is4d()) throw SpecError("chern1: needs a 2D family");
    auto integrand = [&phi, model](cplx w) {
        const double lam2 = 4.0 / sq(1.0 - std::norm(w));
        double b;  // |grad log phi|_h^2 relative to the curvature scale
        if (model == Model::DISC) {
            const LogJet2 lj = log_jet(phi, w, Model::DISC);
            b = std::norm(lj.lz) * sq(1.0 - std::norm(w));
        } else {
            const cplx z = halfplane_from_disc(w);
            const LogJet2 lj = log_jet(phi, z, Model::HALFPLANE);
            b = 4.0 * sq(z.imag()) * std::norm(lj.lz);
        }
        return lam2 * (1.0 - b);
    };
    const QuadResult q = integrate_disc(integrand, cfg);
    if (!q.converged) throw QuadratureNotConverged("chern1: disc quadrature did not converge");
    return q.value / (2.0 * kPi);
}

std::vector<HiggsZero> higgs_zeros(const SuperPotential& phi, cplx lo, cplx hi, int grid) {
    if (phi.is4d()) throw SpecError("higgs_zeros: needs a 2D family");
    if (grid < 2) throw SpecError("higgs_zeros: grid must be at least 2");

    std::vector<cplx> found;
    const double du = (hi.real() - lo.real()) / grid;
    const double dv = (hi.imag() - lo.imag()) / grid;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            cplx z{lo.real() + (i + 0.5) * du, lo.imag() + (j + 0.5) * dv};
            if (!(z.imag() > 1e-6)) continue;

            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                LogJet2 lj;
                try {
                    lj = log_jet(phi, z, Model::HALFPLANE);
                } catch (const Error&) {
                    break;
                }
                // Solve lz + lz_z d + lz_zb conj(d) = 0 as a real 2x2 system.
                const double a11 = lj.lz_z.real() + lj.lz_zb.real();
                const double a12 = -lj.lz_z.imag() + lj.lz_zb.imag();
                const double a21 = lj.lz_z.imag() + lj.lz_zb.imag();
                const double a22 = lj.lz_z.real() - lj.lz_zb.real();
                const double det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-30) break;
                const double rx = -lj.lz.real(), ry = -lj.lz.imag();
                const cplx d{(rx * a22 - ry * a12) / det, (ry * a11 - rx * a21) / det};
                z += d;
                if (!(z.imag() > 1e-9)) break;
                if (std::abs(d) < 1e-13 * (1.0 + std::abs(z))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;  // non-converging seeds are dropped
            if (z.real() < lo.real() - 1e-6 || z.real() > hi.real() + 1e-6 ||
                z.imag() < lo.imag() - 1e-6 || z.imag() > hi.imag() + 1e-6)
                continue;
            const LogJet2 lj = log_jet(phi, z, Model::HALFPLANE);
            if (2.0 * z.imag() * std::abs(lj.lz) >= 1e-10) continue;
            bool dup = false;
            for (const cplx& f : found)
                if (std::abs(f - z) < 1e-7) dup = true;
            if (!dup) found.push_back(z);
        }
    }
    std::sort(found.begin(), found.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<HiggsZero> out;
    for (const cplx& z : found) {
        HiggsZero hz;
        hz.point = {Model::HALFPLANE, z};
        const double w = zero_winding(phi, hz.point, 1e-4, 256);
        const double rounded = std::round(w);
        hz.order = (std::abs(w - rounded) < 0.15) ? rounded : w;
        out.push_back(hz);
    }
    return out;
}

double zero_winding(const SuperPotential& phi, const HyperPoint& center, double radius,
                    int n) {
    if (phi.is4d()) throw SpecError("zero_winding: needs a 2D family");
    if (n < 16) throw SpecError("zero_winding: need at least 16 samples");

    // Cut potentials: walk an arc that stays clear of the cut ray through the
    // origin; the order is the swept argument of Phi per radian of arc.
    const bool cut = (phi.family == Family::DISC_FAMILY || phi.family == Family::FHP1 ||
                      phi.family == Family::FHP2) &&
                     std::abs(center.coord) < 2.0 * radius;
    double th0 = 0.0, th1 = 2.0 * kPi;
    if (cut) {
        const double margin = std::max(0.05, 4.0 * 2.0 * kPi / n);
        const double cut_dir = (phi.branch == Branch::CUT_NEG) ? kPi : 0.0;
        th0 = cut_dir + margin;
        th1 = cut_dir + 2.0 * kPi - margin;
    }

    // Closed loop when there is no cut (the endpoint repeats the start), open
    // arc otherwise; either way the order is the swept argument per radian.
    double total = 0.0;
    cplx prev;
    for (int k = 0; k <= n; ++k) {
        const double th = th0 + (th1 - th0) * k / n;
        const cplx p = center.coord + radius * cplx{std::cos(th), std::sin(th)};
        const cplx f = vortex_from_potential(phi, {center.model, p}, VortexKind::VORTEX).phi;
        if (std::abs(f) == 0.0) throw NoConvergence("zero_winding: Phi vanishes on the circle");
        if (k > 0) total += std::arg(f / prev);
        prev = f;
    }
    return total / (th1 - th0);
}

void vortex_csv(std::ostream& out, const SuperPotential& phi,
                const std::vector<HyperPoint>& pts, VortexKind kind) {
    out << "model,re,im,a_t,a_r,re_phi,im_phi,res1,res2\n";
    out.precision(17);
    for (const HyperPoint& p : pts) {
        const VortexSample vs = vortex_from_potential(phi, p, kind);
        const auto [r1, r2] = vortex_residuals(phi, p, kind);
        out << (p.model == Model::HALFPLANE ? "halfplane" : "disc") << ',' << p.coord.real()
            << ',' << p.coord.imag() << ',' << vs.a1 << ',' << vs.a2 << ',' << vs.phi.real()
            << ',' << vs.phi.imag() << ',' << r1 << ',' << r2 << '\n';
    }
}

}  // namespace hfa
