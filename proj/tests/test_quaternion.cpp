#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hfa/quaternion.hpp"

using namespace hfa;

namespace {

Quat rand_quat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}

// Brute-force Hodge star from the Levi-Civita symbol, as an oracle for the
// sign-permutation table: (*F)_{mu nu} = (1/2) eps_{mu nu a b} F_{a b}.
int levi_civita(int a, int b, int c, int d) {
    int p[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) {
                std::swap(p[i], p[j]);
                sign = -sign;
            }
        }
    return sign;
}

QTwoForm star_oracle(const QTwoForm& F) {
    // Full antisymmetric representation first.
    Quat full[4][4];
    for (int s = 0; s < 6; ++s) {
        auto [mu, nu] = kFormPairs[static_cast<size_t>(s)];
        full[mu][nu] = F[s];
        full[nu][mu] = -F[s];
    }
    QTwoForm out;
    for (int s = 0; s < 6; ++s) {
        auto [mu, nu] = kFormPairs[static_cast<size_t>(s)];
        Quat acc;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += 0.5 * levi_civita(mu, nu, a, b) * full[a][b];
        out[s] = acc;
    }
    return out;
}

double max_abs_diff(const QTwoForm& A, const QTwoForm& B) {
    double m = 0.0;
    for (int p = 0; p < 6; ++p) m = std::max(m, qnorm(A[p] - B[p]));
    return m;
}

}  // namespace

TEST_CASE("quaternion algebra basics") {
    Quat i = Quat::unit(1), j = Quat::unit(2), k = Quat::unit(3);
    CHECK(qnorm(qmul(i, j) - k) == 0.0);
    CHECK(qnorm(qmul(j, k) - i) == 0.0);
    CHECK(qnorm(qmul(k, i) - j) == 0.0);
    CHECK(qnorm(qmul(i, i) + Quat::real(1.0)) == 0.0);

    Quat q{1, 2, 3, 4};
    Quat prod = qmul(q, qinv(q));
    CHECK(qnorm(prod - Quat::real(1.0)) < 1e-15);

    // conj(x) x = |x|^2 as a real scalar.
    Quat x = i + j;
    Quat n = qmul(qconj(x), x);
    CHECK(n.c[0] == doctest::Approx(2.0));
    CHECK(qnorm(qim(n)) == 0.0);

    CHECK_THROWS_AS(qinv(Quat{}), Error);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937 rng(7);
    for (int t = 0; t < 100; ++t) {
        Quat p = rand_quat(rng), q = rand_quat(rng);
        CHECK(qnorm(qmul(p, q)) == doctest::Approx(qnorm(p) * qnorm(q)).epsilon(1e-12));
    }
}

TEST_CASE("imaginary enforcement") {
    std::array<Quat, 4> coeff{};
    coeff[0] = Quat{5e-13, 1, 0, 0};
    QOneForm a(coeff);
    CHECK(a[0].c[0] == 0.0);  // tiny real part zeroed

    coeff[0] = Quat{1e-6, 1, 0, 0};
    CHECK_THROWS_AS(QOneForm{coeff}, NotImaginary);
}

TEST_CASE("frozen constant two-forms dx^dxbar and dxbar^dx") {
    const QTwoForm& sd = csd();
    const QTwoForm& asd = casd();

    // Slots 01,02,03,12,13,23.
    std::array<Quat, 6> sd_expect = {Quat{0, -2, 0, 0}, Quat{0, 0, -2, 0}, Quat{0, 0, 0, -2},
                                     Quat{0, 0, 0, -2}, Quat{0, 0, 2, 0},  Quat{0, -2, 0, 0}};
    std::array<Quat, 6> asd_expect = {Quat{0, 2, 0, 0},  Quat{0, 0, 2, 0}, Quat{0, 0, 0, 2},
                                      Quat{0, 0, 0, -2}, Quat{0, 0, 2, 0}, Quat{0, -2, 0, 0}};
    for (int p = 0; p < 6; ++p) {
        CHECK(qnorm(sd[p] - sd_expect[static_cast<size_t>(p)]) == 0.0);
        CHECK(qnorm(asd[p] - asd_expect[static_cast<size_t>(p)]) == 0.0);
    }

    CHECK(density(sd) == doctest::Approx(24.0));
    CHECK(density(asd) == doctest::Approx(24.0));

    // Duality eigenvectors.
    CHECK(max_abs_diff(hodge_star(sd), sd) == 0.0);
    QTwoForm masd = asd;
    masd *= -1.0;
    CHECK(max_abs_diff(hodge_star(asd), masd) == 0.0);

    auto [sd_plus, sd_minus] = sd_asd_split(sd);
    CHECK(max_abs_diff(sd_plus, sd) == 0.0);
    CHECK(density(sd_minus) == 0.0);
    auto [asd_plus, asd_minus] = sd_asd_split(asd);
    CHECK(density(asd_plus) == 0.0);
    CHECK(max_abs_diff(asd_minus, asd) == 0.0);
}

TEST_CASE("hodge star table matches Levi-Civita oracle") {
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        QTwoForm F;
        for (int p = 0; p < 6; ++p) F[p] = qim(rand_quat(rng));
        CHECK(max_abs_diff(hodge_star(F), star_oracle(F)) == 0.0);
        // Star is an involution on 2-forms in R^4.
        CHECK(max_abs_diff(hodge_star(hodge_star(F)), F) == 0.0);
    }
}

TEST_CASE("split is an exact orthogonal decomposition") {
    std::mt19937 rng(13);
    for (int t = 0; t < 50; ++t) {
        QTwoForm F;
        for (int p = 0; p < 6; ++p) F[p] = qim(rand_quat(rng));
        auto [plus, minus] = sd_asd_split(F);

        // minus is defined as F - plus, so that subtraction is reproduced bit
        // for bit; re-adding the halves is exact only up to one rounding.
        QTwoForm resid = F;
        for (int p = 0; p < 6; ++p) resid[p] = F[p] - plus[p];
        CHECK(max_abs_diff(resid, minus) == 0.0);
        CHECK(max_abs_diff(plus + minus, F) < 1e-15);

        // Eigenform property to roundoff.
        CHECK(max_abs_diff(hodge_star(plus), plus) < 1e-14);
        QTwoForm mminus = minus;
        mminus *= -1.0;
        CHECK(max_abs_diff(hodge_star(minus), mminus) < 1e-14);

        // Pythagoras for the pointwise density.
        CHECK(density(F) == doctest::Approx(density(plus) + density(minus)).epsilon(1e-12));
    }
}

TEST_CASE("wedge rule against raw expansion") {
    // dx^0 ^ dx^1 with unit imaginary coefficient q sits half in each dual part.
    for (int slot = 1; slot <= 3; ++slot) {
        QTwoForm F;
        F[0] = Quat::unit(slot);
        auto [plus, minus] = sd_asd_split(F);
        CHECK(qnorm(plus[0] - 0.5 * Quat::unit(slot)) < 1e-15);
        CHECK(qnorm(plus[5] - 0.5 * Quat::unit(slot)) < 1e-15);
        CHECK(qnorm(minus[0] - 0.5 * Quat::unit(slot)) < 1e-15);
        CHECK(qnorm(minus[5] + 0.5 * Quat::unit(slot)) < 1e-15);
        CHECK(density(plus) == doctest::Approx(0.5));
        CHECK(density(minus) == doctest::Approx(0.5));
    }

    // Wedge of quaternion-valued forms keeps multiplication order: the
    // coefficients of p ^ p are the commutators [p_mu, p_nu].  They are
    // nonzero in general and vanish when every component shares one
    // imaginary direction.
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        QOneForm p;
        for (int m = 0; m < 4; ++m) p[m] = qim(rand_quat(rng));
        QTwoForm pp = wedge(p, p);
        for (int s = 0; s < 6; ++s) {
            auto [mu, nu] = kFormPairs[static_cast<size_t>(s)];
            Quat comm = qmul(p[mu], p[nu]) - qmul(p[nu], p[mu]);
            CHECK(qnorm(pp[static_cast<size_t>(s)] - comm) == 0.0);
        }

        Quat dir = qim(rand_quat(rng));
        QOneForm par;
        for (int m = 0; m < 4; ++m) par[m] = (0.25 + m) * dir;
        CHECK(density(wedge(par, par)) < 1e-24);
    }
}
