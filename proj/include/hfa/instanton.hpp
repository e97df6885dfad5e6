#pragma once

// SU(2) connections on R^4 built from a scalar field rho, plus the ADHM-style
// rational construction.  The connection is A = -Im((d log rho) dx) in the
// self-dual convention and the quaternion-conjugated analogue for the
// anti-self-dual one; curvature comes from a closed second-order formula in
// log rho rather than from differentiating A numerically.

#include <functional>
#include <utility>
#include <vector>

#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/quaternion.hpp"

namespace hfa {

enum class Duality { SD, ASD };

// Data for the rank-1 rational construction: k real centers with positive
// scales.  Centers must be pairwise distinct.
struct AdhmData {
    std::vector<double> b;
    std::vector<double> lambda;

    static AdhmData make(std::vector<double> b, std::vector<double> lambda);
};

// A_mu at x for the ansatz of the given duality.  Components are imaginary
// quaternions.  Throws PoleError at centers of rho.
QOneForm ansatz_connection(const SuperPotential& rho, const Quat& x, Duality d);

// Curvature two-form of the ansatz connection, from the closed formula
//   F = (1/8) sum_{mu,nu} M_{mu nu} ebar_mu C e_nu  +  (lap rho / 8 rho) C'
// with M_{mu nu} = d_mu d_nu log rho - (d_mu log rho)(d_nu log rho); C is the
// dual constant form and C' the opposite one (so the trace term carries the
// whole off-duality part and vanishes when rho is harmonic).
QTwoForm curvature(const SuperPotential& rho, const Quat& x, Duality d);

// (|F^+|^2, |F^-|^2) at x.
std::pair<double, double> curvature_densities(const SuperPotential& rho, const Quat& x,
                                              Duality d);

// Second Chern number: -(1/16 pi^2) * integral of lap lap log rho, with the
// sign flipped for ASD.  The config is adapted to the field (centers excluded,
// integration radius pushed past the farthest center); throws
// QuadratureNotConverged if the integral does not settle.
double chern2(const SuperPotential& rho, Duality d, const QuadConfig& cfg = {});

// Pointwise gauge transform A |-> Im(g A g^-1 - (dg) g^-1).  g need not be
// normalized; dg is taken by central differences.  Throws SingularGauge where
// |g| is numerically zero.
QOneForm gauge_transform4(const std::function<QOneForm(const Quat&)>& A,
                          const std::function<Quat(const Quat&)>& g, const Quat& x);

// Connection of the rational construction: A_mu = Im(sum_i conj(f_i) d_mu f_i) / |f|^2
// with f_0 = 1, f_i = lambda_i (x - b_i)^{-1}.  k = 0 gives the zero form.
QOneForm adhm_connection(const AdhmData& data, const Quat& x);

// F = dA + A ^ A by central differences of an arbitrary connection field.
// Reference implementation for cross-checking `curvature`; much slower.
QTwoForm curvature_fd(const std::function<QOneForm(const Quat&)>& A, const Quat& x);

}  // namespace hfa
