#pragma once

// Reduction of rotationally symmetric 4D connections to hyperbolic vortex
// data on the half-plane, and the inverse lift.  The Higgs field carries the
// affine shift that absorbs the conformal factor, so the flat connection
// reduces to phi = i and gauge transforms act by a plain phase.

#include <complex>
#include <functional>
#include <utility>

#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/quaternion.hpp"

namespace hfa {

// Evaluation frame for the reduction: the 4D point is t + r q with q an
// imaginary unit (the plane of symmetry is picked by q; the default matches
// the half-plane coordinates z = t + i r).
struct SymmetricFrame {
    double t = 0.0;
    double r = 1.0;
    Quat q{0.0, 1.0, 0.0, 0.0};
};

// a = a_t dt + a_r dr and the Higgs field of the reduced vortex.
struct ReducedPair {
    double a_t = 0.0;
    double a_r = 0.0;
    cplx phi{};
};

using Connection4 = std::function<QOneForm(const Quat&)>;
using PairField = std::function<ReducedPair(double, double)>;

// Sample a symmetric connection at the frame point and read off the vortex
// data. Components that a symmetric connection cannot have (and the mismatch
// of the third spatial slot against the Higgs pattern) must stay below 1e-9,
// else NotSymmetric.
ReducedPair reduce_connection(const Connection4& A, const SymmetricFrame& f);

// Rebuild the 4D connection from a vortex pair field at x (r = |vector part|).
// Inverse of reduce_connection on symmetric fields. AxisError on the t-axis.
QOneForm lift_vortex(const PairField& p, const Quat& x);

// The vortex pair field of a 2D potential, in half-plane coordinates.
PairField make_pair_field(const SuperPotential& phi);

// Hyperbolic energy of the potential's vortex:
// integral of s^2 + 2|d_a Phi|_h^2 + (1 - |Phi|^2)^2 over the disc.
double reduced_action(const SuperPotential& phi, const QuadConfig& cfg = QuadConfig{});

// (second Chern number of the lifted 4D field, first Chern number of the
// vortex): the pair must agree for potentials that lift.
std::pair<double, double> chern_reduction_check(const SuperPotential& phi,
                                                const QuadConfig& cfg = QuadConfig{});

}  // namespace hfa
