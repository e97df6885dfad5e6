#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hfa/quaternion.hpp"

namespace hfa {

using cplx = std::complex<double>;

// Knobs for the deterministic integrators. Angular resolutions are rounded to
// the integrator's internal panel granularity; `deltas` must be strictly
// decreasing and positive.
struct QuadConfig {
    int gl_degree = 16;    // radial Gauss-Legendre nodes per panel (16 only)
    int n_theta = 256;     // disc angular resolution (even; offset nodes miss the axis cuts)
    double tol = 1e-6;     // convergence target, relative to max(1, |value|)
    int max_depth = 20;    // dyadic refinement limit per radial panel
    std::vector<double> deltas = {1e-2, 1e-3, 1e-4};  // disc boundary cutoffs

    double radius = 9.0;       // 4D: outer integration radius
    double radius_mid = 6.0;   // 4D: anchor for the power-law tail fit
    double exclusion = 1e-3;   // radius of the shifted-sample cap around singular points
    std::vector<Quat> exclude_centers;  // 4D points whose caps are shifted
    std::vector<double> radial_breaks;  // 4D radii the panels must not straddle

    int s3_psi = 16, s3_theta = 16, s3_phi = 32;  // 3-sphere product resolutions

    int workers = 0;  // 0: HFA_WORKERS env var, falling back to the hardware count
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    long evals = 0;
    std::vector<double> stage_values;  // per-delta partials (disc) or mid/full/extrapolated (ball)
};

// Both integrators fan grid evaluations across workers, so f must be pure;
// results are bit-identical regardless of the worker count (indexed slots,
// fixed-tree pairwise reduction).

// Integral of f over the unit disc, plain Lebesgue measure. Radial panels on
// [exclusion, 1-delta] are refined dyadically; the innermost cap is charged at
// the exclusion circle's values (the integrands used here are finite there but
// stiff); the boundary limit is Richardson-extrapolated over the deltas.
QuadResult integrate_disc(const std::function<double(cplx)>& f, const QuadConfig& cfg = QuadConfig{});

// Integral of f over R^4: spherical product rule over shells, adaptive radial
// panels to `radius`, then the exterior under u = 1/r (smooth at u = 0 for
// densities decaying like |x|^-8). Samples inside `exclusion` of a declared
// center are shifted radially out to the exclusion sphere.
QuadResult integrate_ball4(const std::function<double(const Quat&)>& f, const QuadConfig& cfg = QuadConfig{});

// Trapezoid of a circle-parametrized pullback around |w| = r: integral of
// g(theta, w(theta)) dtheta over [0, 2pi), offset nodes so the real-axis cuts
// are never sampled. Spectrally accurate for smooth g; the estimate compares
// n against n/2 points.
double loop_integral(const std::function<double(double, cplx)>& g, double r, int n,
                     double* error_estimate = nullptr);

// Effective worker count: `requested`, or HFA_WORKERS, or the hardware.
int resolve_workers(int requested);

}  // namespace hfa
