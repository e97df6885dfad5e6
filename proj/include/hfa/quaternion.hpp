#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "hfa/errors.hpp"

namespace hfa {

// Threshold below which a stray real part is zeroed instead of rejected.
inline constexpr double kImagTol = 1e-12;

// Quaternion q = c[0] + c[1] i + c[2] j + c[3] k over doubles.
struct Quat {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    Quat() = default;
    Quat(double r, double i, double j, double k) : c{r, i, j, k} {}

    static Quat real(double r) { return {r, 0.0, 0.0, 0.0}; }

    // Basis element e_mu of dx = e_mu dx^mu: (1, i, j, k).
    static Quat unit(int mu) {
        Quat q;
        q.c[static_cast<size_t>(mu)] = 1.0;
        return q;
    }

    // Conjugate basis element of dxbar: (1, -i, -j, -k).
    static Quat unit_conj(int mu) {
        Quat q;
        q.c[static_cast<size_t>(mu)] = mu == 0 ? 1.0 : -1.0;
        return q;
    }

    double& operator[](int mu) { return c[static_cast<size_t>(mu)]; }
    const double& operator[](int mu) const { return c[static_cast<size_t>(mu)]; }

    Quat operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
    Quat& operator+=(const Quat& o) {
        for (int m = 0; m < 4; ++m) c[m] += o.c[m];
        return *this;
    }
    Quat& operator-=(const Quat& o) {
        for (int m = 0; m < 4; ++m) c[m] -= o.c[m];
        return *this;
    }
    Quat& operator*=(double s) {
        for (double& v : c) v *= s;
        return *this;
    }
};

inline Quat operator+(Quat a, const Quat& b) { return a += b; }
inline Quat operator-(Quat a, const Quat& b) { return a -= b; }
inline Quat operator*(Quat a, double s) { return a *= s; }
inline Quat operator*(double s, Quat a) { return a *= s; }
inline Quat operator/(Quat a, double s) { return a *= 1.0 / s; }

// Hamilton product.
inline Quat qmul(const Quat& a, const Quat& b) {
    return {
        a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3],
        a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2],
        a.c[0] * b.c[2] - a.c[1] * b.c[3] + a.c[2] * b.c[0] + a.c[3] * b.c[1],
        a.c[0] * b.c[3] + a.c[1] * b.c[2] - a.c[2] * b.c[1] + a.c[3] * b.c[0],
    };
}
inline Quat operator*(const Quat& a, const Quat& b) { return qmul(a, b); }

inline Quat qconj(const Quat& q) { return {q.c[0], -q.c[1], -q.c[2], -q.c[3]}; }
inline double qre(const Quat& q) { return q.c[0]; }
inline Quat qim(const Quat& q) { return {0.0, q.c[1], q.c[2], q.c[3]}; }
inline double qnorm2(const Quat& q) {
    return q.c[0] * q.c[0] + q.c[1] * q.c[1] + q.c[2] * q.c[2] + q.c[3] * q.c[3];
}
inline double qnorm(const Quat& q) { return std::sqrt(qnorm2(q)); }
inline double qdot(const Quat& a, const Quat& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline Quat qinv(const Quat& q) {
    double n2 = qnorm2(q);
    if (n2 < 1e-300) throw Error("qinv: zero quaternion has no inverse");
    return qconj(q) / n2;
}

// Zeroes a real part below kImagTol; rejects anything larger.
inline Quat enforce_imaginary(Quat q, const char* where) {
    if (std::abs(q.c[0]) > kImagTol)
        throw NotImaginary(std::string(where) + ": real part " + std::to_string(q.c[0]));
    q.c[0] = 0.0;
    return q;
}

// Index pairs (mu, nu), mu < nu, in lexicographic order for two-form storage.
inline constexpr std::array<std::pair<int, int>, 6> kFormPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// su(2)-valued 1-form: purely imaginary coefficient a[mu] of dx^mu.
struct QOneForm {
    std::array<Quat, 4> a{};

    QOneForm() = default;
    explicit QOneForm(const std::array<Quat, 4>& coeff) {
        for (int m = 0; m < 4; ++m) a[static_cast<size_t>(m)] = enforce_imaginary(coeff[static_cast<size_t>(m)], "QOneForm");
    }
    Quat& operator[](int mu) { return a[static_cast<size_t>(mu)]; }
    const Quat& operator[](int mu) const { return a[static_cast<size_t>(mu)]; }
};

// su(2)-valued 2-form: purely imaginary coefficient f[p] of dx^mu ^ dx^nu,
// slots ordered as kFormPairs.
struct QTwoForm {
    std::array<Quat, 6> f{};

    QTwoForm() = default;
    explicit QTwoForm(const std::array<Quat, 6>& coeff) {
        for (int p = 0; p < 6; ++p) f[static_cast<size_t>(p)] = enforce_imaginary(coeff[static_cast<size_t>(p)], "QTwoForm");
    }
    Quat& operator[](int p) { return f[static_cast<size_t>(p)]; }
    const Quat& operator[](int p) const { return f[static_cast<size_t>(p)]; }

    QTwoForm& operator+=(const QTwoForm& o) {
        for (int p = 0; p < 6; ++p) f[static_cast<size_t>(p)] += o.f[static_cast<size_t>(p)];
        return *this;
    }
    QTwoForm& operator-=(const QTwoForm& o) {
        for (int p = 0; p < 6; ++p) f[static_cast<size_t>(p)] -= o.f[static_cast<size_t>(p)];
        return *this;
    }
    QTwoForm& operator*=(double s) {
        for (auto& q : f) q *= s;
        return *this;
    }
};

inline QTwoForm operator+(QTwoForm a, const QTwoForm& b) { return a += b; }
inline QTwoForm operator-(QTwoForm a, const QTwoForm& b) { return a -= b; }
inline QTwoForm operator*(QTwoForm a, double s) { return a *= s; }
inline QTwoForm operator*(double s, QTwoForm a) { return a *= s; }

// p ^ q with quaternionic coefficients kept in order: c_{mu nu} = p_mu q_nu - p_nu q_mu.
QTwoForm wedge(const QOneForm& p, const QOneForm& q);

// Euclidean Hodge star in the standard orientation dx^0^dx^1^dx^2^dx^3.
QTwoForm hodge_star(const QTwoForm& F);

// (F_plus, F_minus); F_plus = (F + *F)/2 and F_minus = F - F_plus exactly.
std::pair<QTwoForm, QTwoForm> sd_asd_split(const QTwoForm& F);

// Pointwise |F|^2 = sum over the six stored components of |f_{mu nu}|^2.
double density(const QTwoForm& F);

// Constant curvature-shaped forms dx ^ dxbar and dxbar ^ dx.
const QTwoForm& csd();
const QTwoForm& casd();

}  // namespace hfa
