#include "hfa/reduction.hpp"

#include <cmath>

#include "hfa/errors.hpp"
#include "hfa/instanton.hpp"
#include "hfa/vortex.hpp"

namespace hfa {

namespace {

Quat axis_combination(const QOneForm& A, const Quat& dir) {
    Quat out{};
    for (int n = 1; n < 4; ++n) out += A[n] * dir[n];
    return out;
}

}  // namespace

ReducedPair reduce_connection(const Connection4& A, const SymmetricFrame& f) {
    if (!(f.r > 0.0)) throw AxisError("reduce: the frame needs r > 0");
    const Quat& q = f.q;
    if (std::abs(q[0]) > 1e-12 || std::abs(qnorm(q) - 1.0) > 1e-12)
        throw NotImaginary("reduce: frame axis must be an imaginary unit");

    // orthonormal completion (q, J, K) of the symmetry axis, K = q J
    Quat seed = (std::abs(q[2]) < 0.9) ? Quat{0.0, 0.0, 1.0, 0.0} : Quat{0.0, 0.0, 0.0, 1.0};
    seed -= q * qdot(seed, q);
    const Quat J = seed * (1.0 / qnorm(seed));
    const Quat K = q * J;

    Quat x = Quat::real(f.t);
    x += q * f.r;
    const QOneForm Ax = A(x);

    const Quat a_time = Ax[0];
    const Quat a_rad = axis_combination(Ax, q);
    const Quat a_j = axis_combination(Ax, J);
    const Quat a_k = axis_combination(Ax, K);

    const double a_t = 2.0 * qdot(a_time, q);
    const double a_r = 2.0 * qdot(a_rad, q);
    const double phi1 = 2.0 * f.r * qdot(a_j, J);
    const double phi2 = 2.0 * f.r * qdot(a_j, K);

    const double inv2r = 0.5 / f.r;
    double res = 0.0;
    res = std::max(res, qnorm(a_time - q * (0.5 * a_t)));
    res = std::max(res, qnorm(a_rad - q * (0.5 * a_r)));
    res = std::max(res, qnorm(a_j - (J * (phi1 * inv2r) + K * (phi2 * inv2r))));
    res = std::max(res, qnorm(a_k - (K * (phi1 * inv2r) - J * (phi2 * inv2r))));
    double scale = 1.0;
    for (int mu = 0; mu < 4; ++mu) scale = std::max(scale, qnorm(Ax[mu]));
    if (res > 1e-9 * scale)
        throw NotSymmetric("reduce: connection is not symmetric about this axis");

    return {a_t, a_r, cplx{phi1, phi2 + 1.0}};
}

QOneForm lift_vortex(const PairField& p, const Quat& x) {
    const double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    if (r < 1e-12) throw AxisError("lift: point on the symmetry axis");
    const ReducedPair rp = p(x[0], r);
    const double phi1 = rp.phi.real();
    const double phi2 = rp.phi.imag() - 1.0;

    const Quat q{0.0, x[1] / r, x[2] / r, x[3] / r};
    QOneForm A;
    A[0] = q * (0.5 * rp.a_t);
    for (int n = 1; n < 4; ++n) {
        Quat dq{};  // derivative of the axis field: (delta_mn - q_m q_n)/r
        for (int m = 1; m < 4; ++m) dq[m] = ((m == n ? 1.0 : 0.0) - q[m] * q[n]) / r;
        A[n] = q * (0.5 * rp.a_r * q[n]) + (Quat::real(0.5 * phi1) + q * (0.5 * phi2)) * dq;
    }
    return A;
}

PairField make_pair_field(const SuperPotential& phi) {
    if (phi.is4d()) throw SpecError("make_pair_field: needs a 2D family");
    return [phi](double t, double r) {
        const VortexSample vs =
            vortex_from_potential(phi, {Model::HALFPLANE, cplx{t, r}}, VortexKind::VORTEX);
        return ReducedPair{vs.a1, vs.a2, vs.phi};
    };
}

double reduced_action(const SuperPotential& phi, const QuadConfig& cfg) {
    if (phi.is4d()) throw SpecError("reduced_action: needs a 2D family");
    const cplx i{0.0, 1.0};
    auto density = [&phi, i](cplx w) {
        const LogJet2 lj = log_jet(phi, w, Model::DISC);
        const cplx wb = std::conj(w);
        const double one = 1.0 - std::norm(w);
        const double lam2 = 4.0 / (one * one);

        const cplx m = (1.0 + w) / (one * (1.0 + wb));
        const cplx beta = lj.lzb + m;
        const cplx k = one * (1.0 + w) / (1.0 + wb);
        const cplx higgs = -i * k * lj.lz;
        const cplx dw_k = (1.0 - wb - 2.0 * std::norm(w)) / (1.0 + wb);
        const cplx dwb_k = -(1.0 + w) * (1.0 + w) / ((1.0 + wb) * (1.0 + wb));

        const cplx c01 = -i * (dwb_k * lj.lz + k * lj.lz_zb) + beta * higgs;
        const cplx c10 = -i * (dw_k * lj.lz + k * lj.lz_z) - std::conj(beta) * higgs;
        const double s = one * one * lj.lzb_z.real() + 1.0;
        const double gap = 1.0 - std::norm(higgs);
        return lam2 * s * s + 4.0 * (std::norm(c10) + std::norm(c01)) + lam2 * gap * gap;
    };
    const QuadResult q = integrate_disc(density, cfg);
    if (!q.converged)
        throw QuadratureNotConverged("reduced_action: disc quadrature did not converge");
    return q.value;
}

std::pair<double, double> chern_reduction_check(const SuperPotential& phi,
                                                const QuadConfig& cfg) {
    const SuperPotential rho = lift_potential(phi);
    return {chern2(rho, Duality::SD, cfg), chern1(phi, cfg, Model::DISC)};
}

}  // namespace hfa
