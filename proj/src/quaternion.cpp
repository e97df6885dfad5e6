#include "hfa/quaternion.hpp"

namespace hfa {

QTwoForm wedge(const QOneForm& p, const QOneForm& q) {
    std::array<Quat, 6> c;
    for (int s = 0; s < 6; ++s) {
        auto [mu, nu] = kFormPairs[static_cast<size_t>(s)];
        c[static_cast<size_t>(s)] = qmul(p[mu], q[nu]) - qmul(p[nu], q[mu]);
    }
    return QTwoForm(c);
}

QTwoForm hodge_star(const QTwoForm& F) {
    // Slot order 01,02,03,12,13,23: star swaps each pair with its complement,
    // with a sign from the permutation parity.
    QTwoForm s;
    s[0] = F[5];
    s[1] = -F[4];
    s[2] = F[3];
    s[3] = F[2];
    s[4] = -F[1];
    s[5] = F[0];
    return s;
}

std::pair<QTwoForm, QTwoForm> sd_asd_split(const QTwoForm& F) {
    QTwoForm star = hodge_star(F);
    QTwoForm plus;
    for (int p = 0; p < 6; ++p) plus[p] = (F[p] + star[p]) * 0.5;
    QTwoForm minus;
    for (int p = 0; p < 6; ++p) minus[p] = F[p] - plus[p];
    return {plus, minus};
}

double density(const QTwoForm& F) {
    double d = 0.0;
    for (int p = 0; p < 6; ++p) d += qnorm2(F[p]);
    return d;
}

namespace {

QTwoForm make_dx_wedge_dxbar() {
    QOneForm dx, dxbar;
    for (int m = 0; m < 4; ++m) {
        dx[m] = Quat::unit(m);
        dxbar[m] = Quat::unit_conj(m);
    }
    return wedge(dx, dxbar);
}

QTwoForm make_dxbar_wedge_dx() {
    QOneForm dx, dxbar;
    for (int m = 0; m < 4; ++m) {
        dx[m] = Quat::unit(m);
        dxbar[m] = Quat::unit_conj(m);
    }
    return wedge(dxbar, dx);
}

}  // namespace

const QTwoForm& csd() {
    static const QTwoForm F = make_dx_wedge_dxbar();
    return F;
}

const QTwoForm& casd() {
    static const QTwoForm F = make_dxbar_wedge_dx();
    return F;
}

}  // namespace hfa
