#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>

#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/vortex.hpp"

namespace hfa {

// U(1) gauge action on hyperbolic vortices: g = e^{2i chi} with chi real
// harmonic. We keep chi = Im h for a holomorphic h and carry (h, h', h'') so
// the action is available both on samples and on exact derivative slots.
struct GaugeChi {
    // jets(p) -> {h, h', h''} in the coordinates the caller evaluates at.
    std::function<std::array<cplx, 3>(cplx)> jets;

    static GaugeChi zero();
    static GaugeChi constant(double kappa);  // chi = kappa
    static GaugeChi winding();               // chi = arg w (cut on the negative axis)
    static GaugeChi square();                // chi = Im w^2
    static GaugeChi holomorphic(std::function<std::array<cplx, 3>(cplx)> jets);
};

// (a, Phi) -> (a - 2 d chi, e^{2i chi} Phi) at the sample's own point.
VortexSample apply_gauge(const VortexSample& s, const GaugeChi& chi);

// The same action on log-derivative slots. Feeding the result through
// residuals_from_logjet verifies that both vortex equations are preserved.
LogJet2 apply_gauge_logjet(const LogJet2& lj, const std::array<cplx, 3>& hjet);

// The two potentials generated by chi alone, phi_{+-} = sin(chi) e^{-+ Re h},
// whose vortices are exactly gauge equivalent under g = e^{2i chi}. Throws
// DegenerateGauge where e^{2i chi} = 1 (both fields vanish there).
std::pair<LogJet2, LogJet2> chi_pair_logjet(const GaugeChi& chi, const HyperPoint& p);
std::pair<VortexSample, VortexSample> pair_from_chi(const GaugeChi& chi, const HyperPoint& p);

// Patching data of the fractional 3/2-charge vortex. fhp_T evaluates the two
// patch functions by the radical route (|w+1|-scaled distances S, S_-);
// fhp_f is the equivalent continuous function with Re f = T2, Im f = T1;
// fhp_gauge is the upper-half patch factor e^{2i chi} built from f. All three
// throw BranchCutError on the real axis, where the patches meet.
std::pair<double, double> fhp_T(cplx w);
cplx fhp_f(cplx w);
cplx fhp_gauge(cplx w);

// One vortex per nonzero real c, built on the disc cut along the positive
// real axis. Crossing the cut once multiplies the denominator root by eps
// (default e^{2 pi i c}), trading phi for phi_prime; the two are gauge
// equivalent, so the vortex is well defined on the punctured disc.
struct MonodromyFamily {
    double c = 1.0;
    cplx eps{1.0, 0.0};
    SuperPotential phi;        // before crossing the cut
    SuperPotential phi_prime;  // after crossing the cut
};

MonodromyFamily monodromy_family(double c);  // eps = e^{2 pi i c}
MonodromyFamily monodromy_family(double c, cplx eps);

// g = eps (1 - conj(eps) wbar^c)(1 - w^c) / [(1 - eps w^c)(1 - wbar^c)]:
// unimodular, carries the phi-vortex to the phi_prime-vortex. Throws
// BranchCutError on the cut and PoleError where a denominator root vanishes.
cplx monodromy_gauge(const MonodromyFamily& fam, cplx w);

// d/dwbar of log g, used to verify the connection half of gauge equivalence.
cplx dbar_log_monodromy_gauge(const MonodromyFamily& fam, cplx w);

// Integral of the phi-vortex connection around |w| = r, by offset trapezoid
// with doubling until cfg.tol is met (QuadratureNotConverged otherwise).
double loop_connection_integral(const MonodromyFamily& fam, double r,
                                const QuadConfig& cfg = QuadConfig{});

// Holonomy around |w| = r: the cut-crossing factor eps times e^{i loop};
// tends to e^{2 pi i c} as r -> 0 when eps is left at its default.
cplx holonomy(const MonodromyFamily& fam, double r, const QuadConfig& cfg = QuadConfig{});

// Per-eigenvalue rotation angle of the limit holonomy in its diagonal form:
// alpha = (c - floor(c))/2, in [0, 1/2).
double holonomy_parameter(double c);

}  // namespace hfa
