#pragma once

// Hyperbolic vortices and anti-vortices built from positive super-potentials
// on the half-plane and disc models: the (a, Phi) ansatz, residuals of the
// governing first- and second-order equations, the first Chern number with
// boundary extrapolation, and Higgs-zero location.

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"

namespace hfa {

enum class VortexKind { VORTEX, ANTIVORTEX };

// A point of hyperbolic space in one of the two models.
struct HyperPoint {
    Model model;
    cplx coord;
};

// Pointwise vortex data: real 1-form a = a1 du + a2 dv in the model's
// coordinates (z = u + iv or w = u + iv) and the Higgs field.
struct VortexSample {
    Model model;
    cplx pos;
    double a1 = 0.0;
    double a2 = 0.0;
    cplx phi;
};

// Model swap: z -> w = (i-z)/(i+z), w -> z = i(1-w)/(1+w).
HyperPoint disc_map(const HyperPoint& p);

// Assemble the (anti-)vortex from logarithmic-derivative data.
VortexSample vortex_from_logjet(const LogJet2& lj, VortexKind kind);

// (first-order residual |dbar_a Phi|_h resp. |d_a Phi|_h, second-order
// residual |*iF_a -+ (1 - |Phi|^2)|), from the same data.
std::pair<double, double> residuals_from_logjet(const LogJet2& lj, VortexKind kind);

VortexSample vortex_from_potential(const SuperPotential& phi, const HyperPoint& p,
                                   VortexKind kind);
std::pair<double, double> vortex_residuals(const SuperPotential& phi, const HyperPoint& p,
                                           VortexKind kind);

// First Chern number: (1/2pi) integral over the disc of
// 4/(1-|w|^2)^2 - 4|d_w log phi|^2 (the two terms cancel at the boundary;
// only the combination is integrated).  `model` picks where the jets are
// taken; the value is model-independent.
double chern1(const SuperPotential& phi, const QuadConfig& cfg = {},
              Model model = Model::DISC);

// A located Higgs zero with its vanishing order (1.0 for simple zeros;
// fractional orders come from winding, see zero_winding).
struct HiggsZero {
    HyperPoint point;
    double order = 1.0;
};

// Newton search for zeros of Phi from a seed grid over the half-plane
// rectangle [lo, hi].  Seeds that fail to converge are dropped.
std::vector<HiggsZero> higgs_zeros(const SuperPotential& phi, cplx lo, cplx hi, int grid = 12);

// Vanishing order of Phi at `center` by the winding of arg Phi along a small
// circle (an arc avoiding the branch cut, for cut potentials).
double zero_winding(const SuperPotential& phi, const HyperPoint& center, double radius,
                    int n = 512);

// CSV rows (model, re, im, a_t, a_r, re_phi, im_phi, res1, res2), one per point.
void vortex_csv(std::ostream& out, const SuperPotential& phi,
                const std::vector<HyperPoint>& pts, VortexKind kind);

}  // namespace hfa
