#include "hfa/potentials.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace hfa {

using std::conj;
using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double sq(double x) { return x * x; }

}  // namespace

cplx cpow_branch(cplx w, double c, Branch br) {
    double r = std::abs(w);
    if (r < 1e-300) {
        if (c > 0.0) return {0.0, 0.0};
        if (c == 0.0) return {1.0, 0.0};
        throw PoleError("cpow_branch: 0 raised to a nonpositive power");
    }
    double th = std::atan2(w.imag(), w.real());
    if (br == Branch::CUT_NEG) {
        if (std::abs(std::abs(th) - kPi) < 1e-12) throw BranchCutError("cpow_branch: point on the negative-axis cut");
    } else {
        if (th < 0.0) th += 2.0 * kPi;
        if (th < 1e-12 || th > 2.0 * kPi - 1e-12)
            throw BranchCutError("cpow_branch: point on the positive-axis cut");
    }
    return std::pow(r, c) * std::exp(cplx(0.0, c * th));
}

cplx disc_from_halfplane(cplx z) {
    cplx den = kI + z;
    if (std::abs(den) < 1e-14) throw PoleError("disc_from_halfplane: z = -i");
    return (kI - z) / den;
}

cplx halfplane_from_disc(cplx w) {
    cplx den = 1.0 + w;
    if (std::abs(den) < 1e-14) throw PoleError("halfplane_from_disc: w = -1");
    return kI * (1.0 - w) / den;
}

LogJet2 transport_logjet(const LogJet2& s, Model target) {
    if (s.model == target) return s;
    LogJet2 o;
    o.model = target;
    o.value = s.value;
    cplx np, npp;
    if (target == Model::DISC) {
        cplx w = disc_from_halfplane(s.pos);
        o.pos = w;
        cplx d = 1.0 + w;
        if (std::abs(d) < 1e-12) throw PoleError("transport_logjet: w = -1");
        np = -2.0 * kI / (d * d);
        npp = 4.0 * kI / (d * d * d);
    } else {
        cplx z = halfplane_from_disc(s.pos);
        o.pos = z;
        cplx d = kI + z;
        np = -2.0 * kI / (d * d);
        npp = 4.0 * kI / (d * d * d);
    }
    o.lz = np * s.lz;
    o.lzb = conj(np) * s.lzb;
    o.lz_z = npp * s.lz + np * np * s.lz_z;
    o.lz_zb = np * conj(np) * s.lz_zb;
    o.lzb_z = conj(np) * np * s.lzb_z;
    o.lzb_zb = conj(npp) * s.lzb + conj(np) * conj(np) * s.lzb_zb;
    return o;
}

bool SuperPotential::is4d() const {
    return family == Family::THOOFT4 || (family == Family::GENERIC && static_cast<bool>(eval4));
}

// ---------------------------------------------------------------------------
// Small dense linear solve (partial pivoting) for the Newton systems below.

namespace {

void solve_dense(std::vector<double>& A, std::vector<double>& rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<size_t>(r * n + col)]) > std::abs(A[static_cast<size_t>(piv * n + col)])) piv = r;
        if (std::abs(A[static_cast<size_t>(piv * n + col)]) < 1e-14) throw NoConvergence("solve_dense: singular Jacobian");
        if (piv != col) {
            for (int c2 = 0; c2 < n; ++c2) std::swap(A[static_cast<size_t>(piv * n + c2)], A[static_cast<size_t>(col * n + c2)]);
            std::swap(rhs[static_cast<size_t>(piv)], rhs[static_cast<size_t>(col)]);
        }
        double d = A[static_cast<size_t>(col * n + col)];
        for (int r = col + 1; r < n; ++r) {
            double f = A[static_cast<size_t>(r * n + col)] / d;
            if (f == 0.0) continue;
            for (int c2 = col; c2 < n; ++c2) A[static_cast<size_t>(r * n + c2)] -= f * A[static_cast<size_t>(col * n + c2)];
            rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[static_cast<size_t>(r)];
        for (int c2 = r + 1; c2 < n; ++c2) acc -= A[static_cast<size_t>(r * n + c2)] * rhs[static_cast<size_t>(c2)];
        rhs[static_cast<size_t>(r)] = acc / A[static_cast<size_t>(r * n + r)];
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Factories.

SuperPotential SuperPotential::thooft(std::vector<Quat> centers, std::vector<double> scales) {
    if (centers.size() != scales.size()) throw SpecError("thooft: centers/scales size mismatch");
    for (double l : scales)
        if (!(l > 0.0)) throw SpecError("thooft: scales must be positive");
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j)
            if (qnorm(centers[i] - centers[j]) < 1e-9) throw SpecError("thooft: coincident centers");
    SuperPotential p;
    p.family = Family::THOOFT4;
    p.centers = std::move(centers);
    p.scales = std::move(scales);
    return p;
}

namespace detail {

void halfplane_H(const SuperPotential& p, cplx z, int order, cplx out[4]) {
    out[0] = z;
    out[1] = 1.0;
    out[2] = 0.0;
    out[3] = 0.0;
    for (size_t i = 0; i < p.poles.size(); ++i) {
        cplx d = z - p.poles[i];
        if (std::abs(d) < 1e-12) throw PoleError("halfplane_H: at a pole");
        cplx d2 = d * d;
        double ci = p.weights[i];
        out[0] -= ci / d;
        out[1] += ci / d2;
        if (order >= 2) out[2] -= 2.0 * ci / (d2 * d);
        if (order >= 3) out[3] += 6.0 * ci / (d2 * d2);
    }
}

std::vector<cplx> halfplane_critical_points(const std::vector<double>& poles, const std::vector<double>& weights) {
    const size_t k = poles.size();
    std::vector<cplx> found;
    if (k == 0) return found;
    std::vector<cplx> seeds;
    for (size_t i = 0; i < k; ++i) {
        double s = std::sqrt(std::max(weights[i], 1e-12));
        seeds.push_back(cplx(poles[i], s));
        seeds.push_back(cplx(poles[i], 0.5 * s));
        seeds.push_back(cplx(poles[i], 2.0 * s));
    }
    for (cplx z : seeds) {
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
            cplx hp = 1.0, hpp = 0.0;
            for (size_t i = 0; i < k; ++i) {
                cplx d = z - poles[i];
                if (std::abs(d) < 1e-10) break;
                hp += weights[i] / (d * d);
                hpp -= 2.0 * weights[i] / (d * d * d);
            }
            if (std::abs(hp) < 1e-13) {
                ok = true;
                break;
            }
            if (std::abs(hpp) < 1e-300) break;
            z -= hp / hpp;
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
        }
        if (ok && z.imag() > 1e-10) {
            bool dup = false;
            for (cplx f : found)
                if (std::abs(f - z) < 1e-7) dup = true;
            if (!dup) found.push_back(z);
        }
    }
    if (found.size() != k) throw NoConvergence("halfplane_critical_points: missed Higgs zeros");
    std::sort(found.begin(), found.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return found;
}

}  // namespace detail

SuperPotential SuperPotential::halfplane_sym(std::vector<cplx> zeros) {
    for (size_t i = 0; i < zeros.size(); ++i) {
        if (!(zeros[i].imag() > 0.0)) throw SpecError("halfplane_sym: zeros must lie in the open upper half-plane");
        for (size_t j = i + 1; j < zeros.size(); ++j)
            if (std::abs(zeros[i] - zeros[j]) < 1e-8) throw SpecError("halfplane_sym: coincident zeros");
    }
    SuperPotential p;
    p.family = Family::HALFPLANE_SYM;
    p.native = Model::HALFPLANE;
    p.zeros = zeros;
    const int k = static_cast<int>(zeros.size());
    p.poles.resize(static_cast<size_t>(k));
    p.weights.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        p.poles[static_cast<size_t>(i)] = zeros[static_cast<size_t>(i)].real();
        p.weights[static_cast<size_t>(i)] = sq(zeros[static_cast<size_t>(i)].imag());
    }
    if (k <= 1) return p;  // one-zero pole data is already exact

    // Newton on (poles, weights) so that H'(z_j) = 0 for every prescribed zero.
    const int n = 2 * k;
    for (int it = 0; it <= 100; ++it) {
        std::vector<double> J(static_cast<size_t>(n * n), 0.0), F(static_cast<size_t>(n), 0.0);
        double fmax = 0.0;
        for (int j = 0; j < k; ++j) {
            cplx hp = 1.0;
            for (int i = 0; i < k; ++i) {
                cplx d = zeros[static_cast<size_t>(j)] - p.poles[static_cast<size_t>(i)];
                cplx d2 = d * d;
                hp += p.weights[static_cast<size_t>(i)] / d2;
                cplx db = 2.0 * p.weights[static_cast<size_t>(i)] / (d2 * d);
                cplx dc = 1.0 / d2;
                J[static_cast<size_t>((2 * j) * n + i)] = db.real();
                J[static_cast<size_t>((2 * j + 1) * n + i)] = db.imag();
                J[static_cast<size_t>((2 * j) * n + k + i)] = dc.real();
                J[static_cast<size_t>((2 * j + 1) * n + k + i)] = dc.imag();
            }
            F[static_cast<size_t>(2 * j)] = hp.real();
            F[static_cast<size_t>(2 * j + 1)] = hp.imag();
            fmax = std::max(fmax, std::abs(hp));
        }
        if (fmax < 1e-13) {
            p.zeros = zeros;
            return p;
        }
        if (it == 100) break;
        solve_dense(J, F, n);
        for (int i = 0; i < k; ++i) {
            p.poles[static_cast<size_t>(i)] -= F[static_cast<size_t>(i)];
            p.weights[static_cast<size_t>(i)] -= F[static_cast<size_t>(k + i)];
            if (!(p.weights[static_cast<size_t>(i)] > 0.0)) throw NoConvergence("halfplane_sym: weight left the positive cone");
        }
    }
    throw NoConvergence("halfplane_sym: Newton failed to place the zeros");
}

SuperPotential SuperPotential::halfplane_from_poles(std::vector<double> poles, std::vector<double> weights) {
    if (poles.size() != weights.size()) throw SpecError("halfplane_from_poles: size mismatch");
    for (double c : weights)
        if (!(c > 0.0)) throw SpecError("halfplane_from_poles: weights must be positive");
    SuperPotential p;
    p.family = Family::HALFPLANE_SYM;
    p.native = Model::HALFPLANE;
    p.poles = std::move(poles);
    p.weights = std::move(weights);
    p.zeros = detail::halfplane_critical_points(p.poles, p.weights);
    return p;
}

SuperPotential SuperPotential::disc_family(double c, cplx eps, Branch br) {
    if (!(c > 0.0)) throw SpecError("disc_family: exponent must be positive");
    if (std::abs(std::abs(eps) - 1.0) > 1e-9) throw SpecError("disc_family: eps must be unimodular");
    SuperPotential p;
    p.family = Family::DISC_FAMILY;
    p.native = Model::DISC;
    p.c = c;
    p.eps = eps / std::abs(eps);
    p.branch = br;
    return p;
}

SuperPotential SuperPotential::disc_family(double c) {
    return disc_family(c, std::exp(cplx(0.0, 2.0 * kPi * c)), Branch::CUT_NEG);
}

SuperPotential SuperPotential::fhp1() {
    SuperPotential p = disc_family(2.5, cplx(0.0, -1.0), Branch::CUT_POS);
    p.family = Family::FHP1;
    return p;
}

SuperPotential SuperPotential::fhp2() {
    SuperPotential p = disc_family(2.5, cplx(1.0, 0.0), Branch::CUT_NEG);
    p.family = Family::FHP2;
    return p;
}

SuperPotential SuperPotential::generic4(std::function<double(const Quat&)> f) {
    SuperPotential p;
    p.family = Family::GENERIC;
    p.eval4 = std::move(f);
    return p;
}

SuperPotential SuperPotential::generic2(Model m, std::function<double(cplx)> f) {
    SuperPotential p;
    p.family = Family::GENERIC;
    p.native = m;
    p.eval2 = std::move(f);
    return p;
}

// ---------------------------------------------------------------------------
// Finite-difference machinery for GENERIC fields.

namespace {

struct StencilPoint {
    int off;
    double w;
};

// Central stencils, all with O(h^2) truncation; weights exclude the 1/h^m factor.
const std::vector<StencilPoint>& stencil(int m) {
    static const std::vector<StencilPoint> tab[5] = {
        {{0, 1.0}},
        {{1, 0.5}, {-1, -0.5}},
        {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
        {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}},
        {{2, 1.0}, {1, -4.0}, {0, 6.0}, {-1, -4.0}, {-2, 1.0}},
    };
    return tab[m];
}

double fd_step(int total_order, double scale) {
    // Balance truncation (after one Richardson level) against roundoff.
    static const double steps[5] = {
        0.0,
        std::pow(DBL_EPSILON, 1.0 / 5.0),
        std::pow(DBL_EPSILON, 1.0 / 6.0),
        std::pow(DBL_EPSILON, 1.0 / 7.0),
        std::pow(DBL_EPSILON, 1.0 / 8.0),
    };
    return steps[total_order] * (1.0 + scale);
}

template <int DIM, typename F>
double fd_tensor(const F& f, const std::array<double, DIM>& x, const std::array<int, DIM>& m, double h) {
    std::array<double, DIM> p{};
    double total = 0.0;
    int hpow = 0;
    for (int d = 0; d < DIM; ++d) hpow += m[static_cast<size_t>(d)];

    // Nested iteration over the product of per-axis stencils.
    std::array<size_t, DIM> idx{};
    for (;;) {
        double coeff = 1.0;
        for (int d = 0; d < DIM; ++d) {
            const auto& st = stencil(m[static_cast<size_t>(d)]);
            p[static_cast<size_t>(d)] = x[static_cast<size_t>(d)] + h * st[idx[static_cast<size_t>(d)]].off;
            coeff *= st[idx[static_cast<size_t>(d)]].w;
        }
        total += coeff * f(p);
        int d = 0;
        for (; d < DIM; ++d) {
            if (++idx[static_cast<size_t>(d)] < stencil(m[static_cast<size_t>(d)]).size()) break;
            idx[static_cast<size_t>(d)] = 0;
        }
        if (d == DIM) break;
    }
    return total / std::pow(h, hpow);
}

template <int DIM, typename F>
double fd_richardson(const F& f, const std::array<double, DIM>& x, const std::array<int, DIM>& m, double h) {
    double c = fd_tensor<DIM>(f, x, m, h);
    double fine = fd_tensor<DIM>(f, x, m, 0.5 * h);
    return (4.0 * fine - c) / 3.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// 4D jets.

Jet4 jet4(const SuperPotential& rho, const Quat& x, int order) {
    if (order < 0 || order > 4) throw OrderUnsupported("jet4: order must be in [0,4]");
    if (!rho.is4d()) throw SpecError("jet4: potential is not four-dimensional");

    Jet4 out;
    out.order = order;

    if (rho.family == Family::THOOFT4) {
        out.v = 1.0;
        for (size_t i = 0; i < rho.centers.size(); ++i) {
            Quat y = x - rho.centers[i];
            double s = qnorm2(y);
            if (s < 1e-18) throw PoleError("jet4: evaluation at a center");
            double l2 = sq(rho.scales[i]);
            double is = 1.0 / s;
            double is2 = is * is, is3 = is2 * is, is4 = is3 * is, is5 = is4 * is;
            auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };
            out.v += l2 * is;
            if (order >= 1)
                for (int a = 0; a < 4; ++a) out.g1[static_cast<size_t>(a)] += l2 * (-2.0 * y[a] * is2);
            if (order >= 2)
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b)
                        out.at2(a, b) += l2 * (-2.0 * kd(a, b) * is2 + 8.0 * y[a] * y[b] * is3);
            if (order >= 3)
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b)
                        for (int c = b; c < 4; ++c)
                            out.at3(a, b, c) += l2 * (8.0 * (kd(a, b) * y[c] + kd(a, c) * y[b] + kd(b, c) * y[a]) * is3 -
                                                      48.0 * y[a] * y[b] * y[c] * is4);
            if (order >= 4)
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b)
                        for (int c = b; c < 4; ++c)
                            for (int d = c; d < 4; ++d) {
                                double dd = kd(a, b) * kd(c, d) + kd(a, c) * kd(b, d) + kd(a, d) * kd(b, c);
                                double dyy = kd(a, b) * y[c] * y[d] + kd(a, c) * y[b] * y[d] + kd(a, d) * y[b] * y[c] +
                                             kd(b, c) * y[a] * y[d] + kd(b, d) * y[a] * y[c] + kd(c, d) * y[a] * y[b];
                                out.at4(a, b, c, d) +=
                                    l2 * (8.0 * dd * is3 - 48.0 * dyy * is4 + 384.0 * y[a] * y[b] * y[c] * y[d] * is5);
                            }
        }
        return out;
    }

    // GENERIC: tensor-product central differences with one Richardson level.
    auto f = [&](const std::array<double, 4>& p) { return rho.eval4(Quat{p[0], p[1], p[2], p[3]}); };
    std::array<double, 4> x0{x[0], x[1], x[2], x[3]};
    out.v = rho.eval4(x);
    double scale = qnorm(x);
    if (order >= 1) {
        double h = fd_step(1, scale);
        for (int a = 0; a < 4; ++a) {
            std::array<int, 4> m{};
            m[static_cast<size_t>(a)] = 1;
            out.g1[static_cast<size_t>(a)] = fd_richardson<4>(f, x0, m, h);
        }
    }
    if (order >= 2) {
        double h = fd_step(2, scale);
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                std::array<int, 4> m{};
                m[static_cast<size_t>(a)] += 1;
                m[static_cast<size_t>(b)] += 1;
                out.at2(a, b) = fd_richardson<4>(f, x0, m, h);
            }
    }
    if (order >= 3) {
        double h = fd_step(3, scale);
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c) {
                    std::array<int, 4> m{};
                    m[static_cast<size_t>(a)] += 1;
                    m[static_cast<size_t>(b)] += 1;
                    m[static_cast<size_t>(c)] += 1;
                    out.at3(a, b, c) = fd_richardson<4>(f, x0, m, h);
                }
    }
    if (order >= 4) {
        double h = fd_step(4, scale);
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c)
                    for (int d = c; d < 4; ++d) {
                        std::array<int, 4> m{};
                        m[static_cast<size_t>(a)] += 1;
                        m[static_cast<size_t>(b)] += 1;
                        m[static_cast<size_t>(c)] += 1;
                        m[static_cast<size_t>(d)] += 1;
                        out.at4(a, b, c, d) = fd_richardson<4>(f, x0, m, h);
                    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// 2D log-jets.

namespace {

LogJet2 logjet_halfplane_sym(const SuperPotential& p, cplx z) {
    if (!(z.imag() > 0.0)) throw SpecError("log_jet: point not in the open upper half-plane");
    cplx H[4];
    detail::halfplane_H(p, z, 3, H);
    double phi = H[0].imag();
    if (!(phi > 0.0)) throw PoleError("log_jet: potential not positive here");
    LogJet2 o;
    o.model = Model::HALFPLANE;
    o.pos = z;
    o.value = phi;
    cplx lz = H[1] / (2.0 * kI * phi);
    o.lz = lz;
    o.lzb = conj(lz);
    o.lz_z = H[2] / (2.0 * kI * phi) - lz * lz;
    o.lz_zb = -lz * conj(lz);  // phi is the imaginary part of a holomorphic map
    o.lzb_z = o.lz_zb;
    o.lzb_zb = conj(o.lz_z);
    return o;
}

struct FamilyCore {
    cplx u, v, A, D_c;
    double D, uv;
};

FamilyCore family_core(const SuperPotential& p, cplx w) {
    double r = std::abs(w);
    if (r >= 1.0 - 1e-14) throw SpecError("log_jet: point not in the open disc");
    FamilyCore fc;
    fc.u = cpow_branch(w, p.c, p.branch);
    fc.v = conj(fc.u);
    fc.uv = std::norm(fc.u);
    fc.A = 1.0 - p.eps * fc.u;
    fc.D = 1.0 - fc.uv;
    fc.D_c = fc.D;
    if (std::abs(fc.A) < 1e-14 || fc.D < 1e-14) throw PoleError("log_jet: family potential pole");
    return fc;
}

LogJet2 logjet_disc_family(const SuperPotential& p, cplx w) {
    FamilyCore fc = family_core(p, w);
    const double c = p.c;
    const cplx eps = p.eps;

    LogJet2 o;
    o.model = Model::DISC;
    o.pos = w;
    o.value = fc.D / std::norm(fc.A);

    cplx G = eps / fc.A - fc.v / fc.D_c;
    cplx wc1 = cpow_branch(w, c - 1.0, p.branch);
    o.lz = c * wc1 * G;

    if (p.family == Family::FHP1 || p.family == Family::FHP2) {
        // Native first-order expressions for the two patched potentials.
        cplx wb15 = conj(cpow_branch(w, 1.5, p.branch));
        cplx u = fc.u, vb = fc.v;
        double d5 = 1.0 - std::pow(std::abs(w), 5.0);
        cplx lwb;
        if (p.family == Family::FHP2) {
            lwb = 2.5 * wb15 * (1.0 - u) / (d5 * (1.0 - vb));
        } else {
            lwb = 2.5 * kI * wb15 * (1.0 + kI * u) / (d5 * (1.0 - kI * vb));
        }
        o.lzb = lwb;
        o.lz = conj(lwb);
    } else {
        o.lzb = conj(o.lz);
    }

    // Second order from the family closed forms.
    cplx wc2 = cpow_branch(w, c - 2.0, p.branch);
    cplx e2 = eps * eps;
    o.lz_z = c * wc2 * ((c - 1.0) * G + c * fc.u * (e2 / (fc.A * fc.A) - fc.v * fc.v / (fc.D_c * fc.D_c)));
    double r2cm2 = std::pow(std::norm(w), c - 1.0);
    o.lz_zb = cplx(-c * c * r2cm2 * (fc.D + fc.uv) / (fc.D * fc.D), 0.0);
    o.lzb_z = o.lz_zb;
    o.lzb_zb = conj(o.lz_z);
    return o;
}

LogJet2 logjet_generic2(const SuperPotential& p, cplx pos, Model model) {
    // Evaluate the scalar in the coordinates asked for, composing with the
    // model map when they differ from the native ones.
    std::function<double(cplx)> f;
    if (model == p.native)
        f = p.eval2;
    else if (model == Model::DISC)
        f = [&p](cplx w) { return p.eval2(halfplane_from_disc(w)); };
    else
        f = [&p](cplx z) { return p.eval2(disc_from_halfplane(z)); };

    auto fr = [&](const std::array<double, 2>& q) { return f(cplx(q[0], q[1])); };
    std::array<double, 2> x0{pos.real(), pos.imag()};
    double scale = std::abs(pos);
    double val = f(pos);
    if (!(val > 0.0)) throw PoleError("log_jet: potential not positive here");

    double h1 = fd_step(1, scale), h2 = fd_step(2, scale);
    double fu = fd_richardson<2>(fr, x0, {1, 0}, h1);
    double fv = fd_richardson<2>(fr, x0, {0, 1}, h1);
    double fuu = fd_richardson<2>(fr, x0, {2, 0}, h2);
    double fuv = fd_richardson<2>(fr, x0, {1, 1}, h2);
    double fvv = fd_richardson<2>(fr, x0, {0, 2}, h2);

    cplx fz = 0.5 * cplx(fu, -fv);
    cplx fzz = 0.25 * cplx(fuu - fvv, -2.0 * fuv);
    double fzzb = 0.25 * (fuu + fvv);

    LogJet2 o;
    o.model = model;
    o.pos = pos;
    o.value = val;
    o.lz = fz / val;
    o.lzb = conj(o.lz);
    o.lz_z = fzz / val - o.lz * o.lz;
    o.lz_zb = fzzb / val - o.lz * o.lzb;
    o.lzb_z = o.lz_zb;
    o.lzb_zb = conj(o.lz_z);
    return o;
}

}  // namespace

LogJet2 log_jet(const SuperPotential& phi, cplx pos, Model model) {
    switch (phi.family) {
        case Family::HALFPLANE_SYM: {
            cplx z = model == Model::HALFPLANE ? pos : halfplane_from_disc(pos);
            LogJet2 native = logjet_halfplane_sym(phi, z);
            return transport_logjet(native, model);
        }
        case Family::DISC_FAMILY:
        case Family::FHP1:
        case Family::FHP2: {
            cplx w = model == Model::DISC ? pos : disc_from_halfplane(pos);
            LogJet2 native = logjet_disc_family(phi, w);
            return transport_logjet(native, model);
        }
        case Family::GENERIC:
            if (!phi.eval2) throw SpecError("log_jet: potential is not two-dimensional");
            return logjet_generic2(phi, pos, model);
        case Family::THOOFT4:
            throw SpecError("log_jet: reduce the 4D potential first");
    }
    throw SpecError("log_jet: unknown family");
}

Jet2 jet2(const SuperPotential& phi, cplx pos, Model model, int order) {
    if (order < 0 || order > 3) throw OrderUnsupported("jet2: order must be in [0,3]");

    if (phi.family == Family::HALFPLANE_SYM && model == Model::HALFPLANE) {
        if (!(pos.imag() > 0.0)) throw SpecError("jet2: point not in the open upper half-plane");
        cplx H[4];
        detail::halfplane_H(phi, pos, order, H);
        Jet2 o;
        o.order = order;
        o.v = H[0].imag();
        if (order >= 1) {
            o.g1 = {H[1].imag(), H[1].real()};  // Im H', Im(i H') = Re H'
        }
        if (order >= 2) {
            o.at2(0, 0) = H[2].imag();
            o.at2(0, 1) = H[2].real();
            o.at2(1, 1) = -H[2].imag();
        }
        if (order >= 3) {
            o.at3(0, 0, 0) = H[3].imag();
            o.at3(0, 0, 1) = H[3].real();
            o.at3(0, 1, 1) = -H[3].imag();
            o.at3(1, 1, 1) = -H[3].real();
        }
        return o;
    }

    if (phi.family == Family::GENERIC && phi.eval2) {
        std::function<double(cplx)> f;
        if (model == phi.native)
            f = phi.eval2;
        else if (model == Model::DISC)
            f = [&phi](cplx w) { return phi.eval2(halfplane_from_disc(w)); };
        else
            f = [&phi](cplx z) { return phi.eval2(disc_from_halfplane(z)); };
        auto fr = [&](const std::array<double, 2>& q) { return f(cplx(q[0], q[1])); };
        std::array<double, 2> x0{pos.real(), pos.imag()};
        double scale = std::abs(pos);
        Jet2 o;
        o.order = order;
        o.v = f(pos);
        if (order >= 1) {
            double h = fd_step(1, scale);
            o.g1 = {fd_richardson<2>(fr, x0, {1, 0}, h), fd_richardson<2>(fr, x0, {0, 1}, h)};
        }
        if (order >= 2) {
            double h = fd_step(2, scale);
            o.at2(0, 0) = fd_richardson<2>(fr, x0, {2, 0}, h);
            o.at2(0, 1) = fd_richardson<2>(fr, x0, {1, 1}, h);
            o.at2(1, 1) = fd_richardson<2>(fr, x0, {0, 2}, h);
        }
        if (order >= 3) {
            double h = fd_step(3, scale);
            o.at3(0, 0, 0) = fd_richardson<2>(fr, x0, {3, 0}, h);
            o.at3(0, 0, 1) = fd_richardson<2>(fr, x0, {2, 1}, h);
            o.at3(0, 1, 1) = fd_richardson<2>(fr, x0, {1, 2}, h);
            o.at3(1, 1, 1) = fd_richardson<2>(fr, x0, {0, 3}, h);
        }
        return o;
    }

    // Everything else: reconstruct real partials from the log-jet, order <= 2.
    if (order > 2) throw OrderUnsupported("jet2: order 3 unavailable for this family/model");
    LogJet2 lj = log_jet(phi, pos, model);
    Jet2 o;
    o.order = order;
    o.v = lj.value;
    cplx su = lj.lz + lj.lzb;               // d_u log phi
    cplx sv = kI * (lj.lz - lj.lzb);        // d_v log phi
    if (order >= 1) o.g1 = {lj.value * su.real(), lj.value * sv.real()};
    if (order >= 2) {
        cplx suu = lj.lz_z + lj.lz_zb + lj.lzb_z + lj.lzb_zb;
        cplx suv = kI * (lj.lz_z - lj.lz_zb + lj.lzb_z - lj.lzb_zb);
        cplx svv = -(lj.lz_z - lj.lz_zb - lj.lzb_z + lj.lzb_zb);
        o.at2(0, 0) = lj.value * (su * su + suu).real();
        o.at2(0, 1) = lj.value * (su * sv + suv).real();
        o.at2(1, 1) = lj.value * (sv * sv + svv).real();
    }
    return o;
}

// ---------------------------------------------------------------------------
// Residuals and curvature scalars.

double harmonic_residual4(const SuperPotential& rho, const Quat& x) {
    return jet4(rho, x, 2).laplacian();
}

double harmonic_residual_hyp(const SuperPotential& phi, cplx pos, Model model) {
    LogJet2 lj = log_jet(phi, pos, model);
    double lam2inv;
    if (model == Model::HALFPLANE) {
        double r = pos.imag();
        if (!(r > 0.0)) throw PoleError("harmonic_residual_hyp: r <= 0");
        lam2inv = r * r;
    } else {
        double d = 1.0 - std::norm(pos);
        if (!(d > 0.0)) throw PoleError("harmonic_residual_hyp: |w| >= 1");
        lam2inv = sq(d) / 4.0;
    }
    cplx acc = lj.lz_zb + lj.lz * lj.lzb;
    return -4.0 * lam2inv * lj.value * acc.real();
}

double scalar_curvature_conformal(const SuperPotential& rho, const Quat& x) {
    Jet4 j = jet4(rho, x, 2);
    return 6.0 * j.laplacian() / (j.v * j.v * j.v);
}

SuperPotential reduce_potential(const SuperPotential& rho4) {
    if (rho4.family != Family::THOOFT4) throw SpecError("reduce_potential: expects centers/scales data");
    std::vector<double> poles, weights;
    for (size_t i = 0; i < rho4.centers.size(); ++i) {
        if (qnorm(qim(rho4.centers[i])) > 1e-12)
            throw NotSymmetric("reduce_potential: center off the real axis");
        poles.push_back(rho4.centers[i][0]);
        weights.push_back(sq(rho4.scales[i]));
    }
    return SuperPotential::halfplane_from_poles(std::move(poles), std::move(weights));
}

SuperPotential lift_potential(const SuperPotential& phi2) {
    if (phi2.family != Family::HALFPLANE_SYM) throw SpecError("lift_potential: expects half-plane pole data");
    std::vector<Quat> centers;
    std::vector<double> scales;
    for (size_t i = 0; i < phi2.poles.size(); ++i) {
        centers.push_back(Quat::real(phi2.poles[i]));
        scales.push_back(std::sqrt(phi2.weights[i]));
    }
    if (centers.empty()) {
        // Flat case phi = r: the lifted field is identically 1; keep an honest
        // empty-center descriptor.
        SuperPotential p;
        p.family = Family::THOOFT4;
        return p;
    }
    return SuperPotential::thooft(std::move(centers), std::move(scales));
}

// ---------------------------------------------------------------------------
// Descriptor JSON.

std::string potential_to_json(const SuperPotential& p) {
    json j;
    switch (p.family) {
        case Family::THOOFT4: {
            j["family"] = "thooft4";
            json cs = json::array();
            for (const Quat& c : p.centers) cs.push_back({c[0], c[1], c[2], c[3]});
            j["centers"] = cs;
            j["scales"] = p.scales;
            break;
        }
        case Family::HALFPLANE_SYM: {
            j["family"] = "halfplane-sym";
            json zs = json::array();
            for (cplx z : p.zeros) zs.push_back({z.real(), z.imag()});
            j["zeros"] = zs;
            j["poles"] = p.poles;
            j["weights"] = p.weights;
            break;
        }
        case Family::DISC_FAMILY:
        case Family::FHP1:
        case Family::FHP2: {
            j["family"] = p.family == Family::DISC_FAMILY ? "disc-family" : (p.family == Family::FHP1 ? "fhp1" : "fhp2");
            j["c"] = p.c;
            j["eps"] = {p.eps.real(), p.eps.imag()};
            j["branch"] = p.branch == Branch::CUT_NEG ? "cut-neg" : "cut-pos";
            break;
        }
        case Family::GENERIC:
            throw SpecError("potential_to_json: GENERIC has no descriptor");
    }
    return j.dump();
}

SuperPotential potential_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("potential_from_json: ") + e.what());
    }
    if (!j.contains("family")) throw SpecError("potential_from_json: missing family");
    std::string fam = j["family"].get<std::string>();
    try {
        if (fam == "thooft4") {
            std::vector<Quat> centers;
            for (const auto& c : j.at("centers")) {
                if (c.size() != 4) throw SpecError("potential_from_json: center needs 4 components");
                centers.push_back(Quat{c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()});
            }
            return SuperPotential::thooft(std::move(centers), j.at("scales").get<std::vector<double>>());
        }
        if (fam == "halfplane-sym") {
            if (j.contains("zeros")) {
                std::vector<cplx> zeros;
                for (const auto& z : j["zeros"]) zeros.push_back(cplx(z[0].get<double>(), z[1].get<double>()));
                return SuperPotential::halfplane_sym(std::move(zeros));
            }
            return SuperPotential::halfplane_from_poles(j.at("poles").get<std::vector<double>>(),
                                                        j.at("weights").get<std::vector<double>>());
        }
        if (fam == "fhp1") return SuperPotential::fhp1();
        if (fam == "fhp2") return SuperPotential::fhp2();
        if (fam == "disc-family") {
            double c = j.at("c").get<double>();
            if (!j.contains("eps")) return SuperPotential::disc_family(c);
            cplx eps{j["eps"][0].get<double>(), j["eps"][1].get<double>()};
            Branch br = Branch::CUT_NEG;
            if (j.contains("branch")) br = j["branch"] == "cut-pos" ? Branch::CUT_POS : Branch::CUT_NEG;
            return SuperPotential::disc_family(c, eps, br);
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("potential_from_json: ") + e.what());
    }
    throw SpecError("potential_from_json: unknown family " + fam);
}

}  // namespace hfa
