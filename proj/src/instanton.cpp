#include "hfa/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hfa/errors.hpp"
#include "hfa/jets.hpp"

namespace hfa {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Central-difference step for first derivatives of a smooth field.
double fd_step1(const Quat& x) {
    return std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 5.0) * (1.0 + qnorm(x));
}

}  // namespace

AdhmData AdhmData::make(std::vector<double> b, std::vector<double> lambda) {
    if (b.size() != lambda.size()) throw SpecError("AdhmData: need one scale per center");
    for (double l : lambda)
        if (!(l > 0.0)) throw SpecError("AdhmData: scales must be positive");
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            if (std::abs(b[i] - b[j]) < 1e-9)
                throw SpecError("AdhmData: centers must be pairwise distinct");
    return AdhmData{std::move(b), std::move(lambda)};
}

QOneForm ansatz_connection(const SuperPotential& rho, const Quat& x, Duality d) {
    Jet4 j = jet4(rho, x, 1);
    double L[4];
    for (int mu = 0; mu < 4; ++mu) L[mu] = j.d1(mu) / j.v;

    std::array<Quat, 4> a{};
    if (d == Duality::SD) {
        // psi = d/dx log rho
        Quat psi{0.5 * L[0], -0.5 * L[1], -0.5 * L[2], -0.5 * L[3]};
        for (int mu = 0; mu < 4; ++mu) a[mu] = -qim(psi * Quat::unit(mu));
    } else {
        // psibar = d/dxbar log rho
        Quat psib{0.5 * L[0], 0.5 * L[1], 0.5 * L[2], 0.5 * L[3]};
        for (int mu = 0; mu < 4; ++mu) a[mu] = -qim(psib * Quat::unit_conj(mu));
    }
    return QOneForm(a);
}

QTwoForm curvature(const SuperPotential& rho, const Quat& x, Duality d) {
    Jet4 j = jet4(rho, x, 2);

    // M_{mu nu} = d_mu d_nu log rho - (d_mu log rho)(d_nu log rho)
    double M[4][4];
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            M[mu][nu] = j.d2(mu, nu) / j.v - 2.0 * j.d1(mu) * j.d1(nu) / (j.v * j.v);

    const QTwoForm& cdual = (d == Duality::SD) ? csd() : casd();
    const QTwoForm& coff = (d == Duality::SD) ? casd() : csd();
    const double trace = j.laplacian() / (8.0 * j.v);

    std::array<Quat, 6> slots{};
    for (int s = 0; s < 6; ++s) {
        Quat acc{};
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                Quat t = (d == Duality::SD)
                             ? Quat::unit_conj(mu) * cdual[s] * Quat::unit(nu)
                             : Quat::unit(mu) * cdual[s] * Quat::unit_conj(nu);
                acc += t * M[mu][nu];
            }
        // The symmetric contraction has no real part; qim only sheds roundoff.
        slots[s] = qim(acc * 0.125 + coff[s] * trace);
    }
    return QTwoForm(slots);
}

std::pair<double, double> curvature_densities(const SuperPotential& rho, const Quat& x,
                                              Duality d) {
    QTwoForm F = curvature(rho, x, d);
    auto [plus, minus] = sd_asd_split(F);
    return {density(plus), density(minus)};
}

double chern2(const SuperPotential& rho, Duality d, const QuadConfig& cfg) {
    if (!rho.is4d()) throw SpecError("chern2: needs a 4D field");
    QuadConfig qc = cfg;
    qc.tol = std::max(cfg.tol, 1e-3);
    qc.exclude_centers = rho.centers;
    double far = 0.0, sharp = 0.0;
    for (size_t i = 0; i < rho.centers.size(); ++i) {
        double rc = qnorm(rho.centers[i]);
        far = std::max(far, rc);
        // Angular width of the density bump seen from the origin.
        if (i < rho.scales.size() && rho.scales[i] > 0.0) sharp = std::max(sharp, rc / rho.scales[i]);
    }
    qc.radius_mid = std::max(cfg.radius_mid, far + 3.0);
    qc.radius = 1.5 * qc.radius_mid;
    // Off-origin bumps are sharp in psi/theta; the phi circle degenerates
    // toward the poles, so it keeps the base resolution.
    int mult = std::clamp(static_cast<int>(std::ceil(sharp / 2.5)), 1, 3);
    qc.s3_psi *= mult;
    qc.s3_theta *= mult;

    const double scale = 1.0 / (16.0 * kPi * kPi);
    auto f = [&](const Quat& p) { return -scale * biharmonic_log4(jet4(rho, p, 4)); };
    QuadResult r = integrate_ball4(f, qc);
    if (!r.converged) throw QuadratureNotConverged("chern2: ball integral did not settle");
    return (d == Duality::SD) ? r.value : -r.value;
}

QOneForm gauge_transform4(const std::function<QOneForm(const Quat&)>& A,
                          const std::function<Quat(const Quat&)>& g, const Quat& x) {
    Quat gx = g(x);
    double n2 = qnorm2(gx);
    if (n2 < 1e-18) throw SingularGauge("gauge_transform4: |g| vanishes at the sample point");
    Quat ginv = qconj(gx) / n2;

    QOneForm Ax = A(x);
    const double h = fd_step1(x);
    std::array<Quat, 4> out{};
    for (int mu = 0; mu < 4; ++mu) {
        Quat e = Quat::unit(mu);
        auto diff = [&](double step) { return (g(x + e * step) - g(x - e * step)) / (2.0 * step); };
        Quat dg = (diff(0.5 * h) * 4.0 - diff(h)) / 3.0;
        out[mu] = qim(gx * Ax[mu] * ginv - dg * ginv);
    }
    return QOneForm(out);
}

QOneForm adhm_connection(const AdhmData& data, const Quat& x) {
    const size_t k = data.b.size();
    std::array<Quat, 4> out{};
    if (k == 0) return QOneForm(out);

    // f_0 = 1, f_i = lambda_i (x - b_i)^{-1}
    std::vector<Quat> f(k), inv(k);
    double norm2 = 1.0;
    for (size_t i = 0; i < k; ++i) {
        Quat y = x - Quat::real(data.b[i]);
        double s = qnorm2(y);
        if (s < 1e-18) throw PoleError("adhm_connection: sample point hits a center");
        inv[i] = qconj(y) / s;
        f[i] = inv[i] * data.lambda[i];
        norm2 += data.lambda[i] * data.lambda[i] / s;
    }
    for (int mu = 0; mu < 4; ++mu) {
        Quat acc{};
        for (size_t i = 0; i < k; ++i) {
            Quat df = -(inv[i] * Quat::unit(mu) * inv[i]) * data.lambda[i];
            acc += qconj(f[i]) * df;
        }
        out[mu] = qim(acc) / norm2;
    }
    return QOneForm(out);
}

QTwoForm curvature_fd(const std::function<QOneForm(const Quat&)>& A, const Quat& x) {
    QOneForm Ax = A(x);
    const double h = fd_step1(x);

    std::array<std::array<Quat, 4>, 4> dA{};  // dA[nu][mu] = d_nu A_mu
    for (int nu = 0; nu < 4; ++nu) {
        Quat e = Quat::unit(nu);
        auto diff = [&](double step) {
            QOneForm p = A(x + e * step);
            QOneForm m = A(x - e * step);
            std::array<Quat, 4> r{};
            for (int mu = 0; mu < 4; ++mu) r[mu] = (p[mu] - m[mu]) / (2.0 * step);
            return r;
        };
        auto coarse = diff(h);
        auto fine = diff(0.5 * h);
        for (int mu = 0; mu < 4; ++mu) dA[nu][mu] = (fine[mu] * 4.0 - coarse[mu]) / 3.0;
    }

    std::array<Quat, 6> slots{};
    for (int s = 0; s < 6; ++s) {
        auto [mu, nu] = kFormPairs[s];
        slots[s] = dA[mu][nu] - dA[nu][mu] + (Ax[mu] * Ax[nu] - Ax[nu] * Ax[mu]);
    }
    return QTwoForm(slots);
}

}  // namespace hfa
