#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "hfa/potentials.hpp"

using namespace hfa;

namespace {

const cplx I{0.0, 1.0};

double thooft_rho(const std::vector<Quat>& centers, const std::vector<double>& scales, const Quat& x) {
    double v = 1.0;
    for (size_t i = 0; i < centers.size(); ++i) v += scales[i] * scales[i] / qnorm2(x - centers[i]);
    return v;
}

// Disc points keeping clear of both real-axis cuts.
std::vector<cplx> disc_samples(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ur(0.15, 0.8), uth(0.0, 2.0 * M_PI);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < n) {
        double r = ur(rng), th = uth(rng);
        if (std::abs(std::sin(th)) < 0.08) continue;
        out.push_back(std::polar(r, th));
    }
    return out;
}

std::vector<cplx> halfplane_samples(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ut(-2.0, 2.0), ur(0.3, 3.0);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(cplx(ut(rng), ur(rng)));
    return out;
}

}  // namespace

TEST_CASE("fractional powers on both branches") {
    Branch neg = Branch::CUT_NEG, pos = Branch::CUT_POS;

    cplx a = cpow_branch(I, 0.5, neg);
    CHECK(std::abs(a - std::polar(1.0, M_PI / 4.0)) < 1e-15);
    CHECK(std::abs(cpow_branch(I, 0.5, pos) - a) < 1e-15);  // upper half agrees

    // Lower half-plane: the two branches pick different sheets.
    cplx bneg = cpow_branch(-I, 0.5, neg);
    cplx bpos = cpow_branch(-I, 0.5, pos);
    CHECK(std::abs(bneg - std::polar(1.0, -M_PI / 4.0)) < 1e-15);
    CHECK(std::abs(bpos - std::polar(1.0, 3.0 * M_PI / 4.0)) < 1e-15);

    CHECK(std::abs(cpow_branch(cplx(2.0, 1.0), 3.0, neg) - std::pow(cplx(2.0, 1.0), 3)) < 1e-12);
    CHECK(cpow_branch(cplx(0.0, 0.0), 2.5, neg) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(cpow_branch(cplx(0.0, 0.0), -1.0, neg), PoleError);
    CHECK_THROWS_AS(cpow_branch(cplx(-1.0, 0.0), 0.5, neg), BranchCutError);
    CHECK_THROWS_AS(cpow_branch(cplx(1.0, 0.0), 0.5, pos), BranchCutError);
    CHECK_NOTHROW(cpow_branch(cplx(1.0, 0.0), 0.5, neg));
    CHECK_NOTHROW(cpow_branch(cplx(-1.0, 0.0), 0.5, pos));
}

TEST_CASE("model maps invert each other") {
    CHECK(std::abs(disc_from_halfplane(I)) < 1e-15);
    CHECK(std::abs(halfplane_from_disc(cplx(0.0, 0.0)) - I) < 1e-15);
    CHECK(std::abs(disc_from_halfplane(cplx(0.0, 0.0)) - 1.0) < 1e-15);

    for (cplx z : halfplane_samples(20, 11)) {
        cplx w = disc_from_halfplane(z);
        CHECK(std::abs(w) < 1.0);
        CHECK(std::abs(halfplane_from_disc(w) - z) < 1e-13);
        // Conformal factor bookkeeping: z - conj z = 2i (1-|w|^2)/|1+w|^2.
        cplx lhs = z - conj(z);
        cplx rhs = 2.0 * I * (1.0 - std::norm(w)) / std::norm(1.0 + w);
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }
}

TEST_CASE("centered field jets: closed form vs finite differences") {
    std::vector<Quat> centers = {Quat{0, 0, 0, 0}, Quat{2.0, 0.5, 0, 0}};
    std::vector<double> scales = {1.0, 0.7};
    SuperPotential p = SuperPotential::thooft(centers, scales);
    SuperPotential g = SuperPotential::generic4([&](const Quat& x) { return thooft_rho(centers, scales, x); });

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 8) {
        Quat x{u(rng), u(rng), u(rng), u(rng)};
        bool ok = qnorm(x) <= 3.0;
        for (const Quat& c : centers) ok = ok && qnorm(x - c) >= 1.2;
        if (!ok) continue;
        ++tested;

        Jet4 ja = jet4(p, x, 4);
        Jet4 jf = jet4(g, x, 4);
        CHECK(std::abs(ja.v - jf.v) < 1e-12);
        for (int a = 0; a < 4; ++a) CHECK(std::abs(ja.d1(a) - jf.d1(a)) < 1e-6 * (1.0 + std::abs(ja.d1(a))));
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) CHECK(std::abs(ja.d2(a, b) - jf.d2(a, b)) < 1e-6 * (1.0 + std::abs(ja.d2(a, b))));
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c)
                    CHECK(std::abs(ja.d3(a, b, c) - jf.d3(a, b, c)) < 1e-6 * (1.0 + std::abs(ja.d3(a, b, c))));
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c)
                    for (int d = c; d < 4; ++d)
                        CHECK(std::abs(ja.d4(a, b, c, d) - jf.d4(a, b, c, d)) <
                              1e-6 * (1.0 + std::abs(ja.d4(a, b, c, d))));
    }
}

TEST_CASE("centered fields are harmonic; fourth-order contraction tracks the FD oracle") {
    SuperPotential p = SuperPotential::thooft({Quat{0, 0, 0, 0}, Quat{1.5, 0, 0, 0}, Quat{0, -1.0, 0.5, 0}},
                                              {1.0, 0.5, 1.2});
    SuperPotential logfd = SuperPotential::generic4([&](const Quat& x) { return std::log(jet4(p, x, 0).v); });

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int tested = 0;
    while (tested < 6) {
        Quat x{u(rng), u(rng), u(rng), u(rng)};
        bool ok = true;
        for (const Quat& c : p.centers) ok = ok && qnorm(x - c) >= 1.2;
        if (!ok) continue;
        ++tested;

        CHECK(std::abs(harmonic_residual4(p, x)) < 1e-10);

        double biha = biharmonic_log4(jet4(p, x, 4));
        Jet4 lj = jet4(logfd, x, 4);
        double oracle = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) oracle += lj.d4(a, a, b, b);
        CHECK(std::abs(biha - oracle) < 2e-5 * (1.0 + std::abs(biha)));
        CHECK(biha <= 1e-12);  // minus the self-dual density; never positive
    }
}

TEST_CASE("non-harmonic control field") {
    SuperPotential g = SuperPotential::generic4([](const Quat& x) { return qnorm2(x); });
    Quat x{1.0, 1.0, 0.0, 0.0};
    CHECK(std::abs(harmonic_residual4(g, x) + 8.0) < 1e-8);
    CHECK(std::abs(scalar_curvature_conformal(g, x) + 6.0) < 1e-7);  // 6 * (-8) / 2^3
}

TEST_CASE("half-plane field: one zero is exact, two zeros are solved") {
    SuperPotential p1 = SuperPotential::halfplane_sym({I});
    CHECK(p1.poles.size() == 1);
    CHECK(p1.poles[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    std::vector<cplx> zeros = {I, cplx(1.0, 2.0)};
    SuperPotential p2 = SuperPotential::halfplane_sym(zeros);
    for (cplx z : zeros) {
        cplx H[4];
        detail::halfplane_H(p2, z, 1, H);
        CHECK(std::abs(H[1]) < 1e-11);
    }
    for (double w : p2.weights) CHECK(w > 0.0);

    // Round trip through the pole representation recovers the zeros.
    SuperPotential back = SuperPotential::halfplane_from_poles(p2.poles, p2.weights);
    REQUIRE(back.zeros.size() == 2);
    CHECK(std::abs(back.zeros[0] - I) < 1e-8);
    CHECK(std::abs(back.zeros[1] - cplx(1.0, 2.0)) < 1e-8);
}

TEST_CASE("half-plane field: positivity, slot identities, hyperbolic harmonicity") {
    SuperPotential p = SuperPotential::halfplane_sym({I, cplx(1.0, 2.0)});
    for (cplx z : halfplane_samples(25, 7)) {
        LogJet2 lj = log_jet(p, z, Model::HALFPLANE);
        CHECK(lj.value > 0.0);
        CHECK(std::abs(lj.lzb - conj(lj.lz)) < 1e-13 * (1.0 + std::abs(lj.lz)));
        CHECK(std::abs(lj.lz_zb + std::norm(lj.lz)) < 1e-12 * (1.0 + std::norm(lj.lz)));
        CHECK(std::abs(harmonic_residual_hyp(p, z, Model::HALFPLANE)) < 1e-10 * (1.0 + lj.value));
    }
    // Flat case: no zeros at all.
    SuperPotential flat = SuperPotential::halfplane_sym({});
    LogJet2 lj = log_jet(flat, cplx(2.0, 3.0), Model::HALFPLANE);
    CHECK(lj.value == doctest::Approx(3.0));
    CHECK(std::abs(lj.lz - 1.0 / (2.0 * I * 3.0)) < 1e-15);
    CHECK(std::abs(harmonic_residual_hyp(flat, cplx(2.0, 3.0), Model::HALFPLANE)) < 1e-14);
}

TEST_CASE("disc families: value, slots vs finite differences, harmonicity") {
    for (double c : {1.0, 2.0, 2.5, 3.7}) {
        SuperPotential fam = SuperPotential::disc_family(c);
        cplx eps = fam.eps;
        auto phi_direct = [c, eps](cplx w) {
            cplx u = std::exp(c * std::log(w));  // principal branch, matches CUT_NEG
            return (1.0 - std::pow(std::abs(w), 2.0 * c)) / std::norm(1.0 - eps * u);
        };
        SuperPotential fd = SuperPotential::generic2(Model::DISC, phi_direct);

        for (cplx w : disc_samples(8, 17 + static_cast<unsigned>(10 * c))) {
            LogJet2 a = log_jet(fam, w, Model::DISC);
            LogJet2 b = log_jet(fd, w, Model::DISC);
            CHECK(std::abs(a.value - b.value) < 1e-12 * (1.0 + a.value));
            CHECK(std::abs(a.lz - b.lz) < 1e-5 * (1.0 + std::abs(a.lz)));
            CHECK(std::abs(a.lz_z - b.lz_z) < 1e-4 * (1.0 + std::abs(a.lz_z)));
            CHECK(std::abs(a.lz_zb - b.lz_zb) < 1e-4 * (1.0 + std::abs(a.lz_zb)));
            CHECK(std::abs(a.lz_zb.imag()) < 1e-13 * (1.0 + std::abs(a.lz_zb)));
            CHECK(std::abs(harmonic_residual_hyp(fam, w, Model::DISC)) < 1e-10 * (1.0 + a.value));
        }
    }
}

TEST_CASE("patched disc potentials match the family's closed slots") {
    SuperPotential f1 = SuperPotential::fhp1();
    SuperPotential f2 = SuperPotential::fhp2();
    SuperPotential fam1 = SuperPotential::disc_family(2.5, cplx(0.0, -1.0), Branch::CUT_POS);
    SuperPotential fam2 = SuperPotential::disc_family(2.5, cplx(1.0, 0.0), Branch::CUT_NEG);

    for (cplx w : disc_samples(20, 41)) {
        LogJet2 a1 = log_jet(f1, w, Model::DISC);
        LogJet2 b1 = log_jet(fam1, w, Model::DISC);
        CHECK(std::abs(a1.value - b1.value) < 1e-13 * (1.0 + a1.value));
        CHECK(std::abs(a1.lz - b1.lz) < 1e-12 * (1.0 + std::abs(b1.lz)));
        CHECK(std::abs(a1.lzb - b1.lzb) < 1e-12 * (1.0 + std::abs(b1.lzb)));

        LogJet2 a2 = log_jet(f2, w, Model::DISC);
        LogJet2 b2 = log_jet(fam2, w, Model::DISC);
        CHECK(std::abs(a2.value - b2.value) < 1e-13 * (1.0 + a2.value));
        CHECK(std::abs(a2.lz - b2.lz) < 1e-12 * (1.0 + std::abs(b2.lz)));
        CHECK(std::abs(a2.lzb - b2.lzb) < 1e-12 * (1.0 + std::abs(b2.lzb)));
    }
}

TEST_CASE("log-jet transport: chain rule against direct FD in the other model") {
    SuperPotential p = SuperPotential::halfplane_sym({I, cplx(-0.5, 1.5)});
    SuperPotential gfd = SuperPotential::generic2(Model::HALFPLANE, [&](cplx z) { return jet2(p, z, Model::HALFPLANE, 0).v; });

    for (cplx w : disc_samples(10, 53)) {
        LogJet2 a = log_jet(p, w, Model::DISC);       // analytic native + transport
        LogJet2 b = log_jet(gfd, w, Model::DISC);     // FD directly in disc coordinates
        CHECK(std::abs(a.value - b.value) < 1e-12 * (1.0 + a.value));
        CHECK(std::abs(a.lz - b.lz) < 1e-5 * (1.0 + std::abs(a.lz)));
        CHECK(std::abs(a.lzb - b.lzb) < 1e-5 * (1.0 + std::abs(a.lzb)));
        CHECK(std::abs(a.lz_z - b.lz_z) < 1e-4 * (1.0 + std::abs(a.lz_z)));
        CHECK(std::abs(a.lz_zb - b.lz_zb) < 1e-4 * (1.0 + std::abs(a.lz_zb)));
        CHECK(std::abs(a.lzb_zb - b.lzb_zb) < 1e-4 * (1.0 + std::abs(a.lzb_zb)));
        // Hyperbolic residual is model-independent up to the conformal factor.
        CHECK(std::abs(harmonic_residual_hyp(p, w, Model::DISC)) < 1e-9);
    }
}

TEST_CASE("real partial jets agree between analytic and log-jet reconstruction") {
    SuperPotential fam = SuperPotential::disc_family(2.0);
    SuperPotential fd = SuperPotential::generic2(Model::DISC, [&](cplx w) { return log_jet(fam, w, Model::DISC).value; });
    for (cplx w : disc_samples(6, 67)) {
        Jet2 a = jet2(fam, w, Model::DISC, 2);
        Jet2 b = jet2(fd, w, Model::DISC, 2);
        CHECK(std::abs(a.v - b.v) < 1e-12 * (1.0 + a.v));
        for (int i = 0; i < 2; ++i) CHECK(std::abs(a.d1(i) - b.d1(i)) < 1e-5 * (1.0 + std::abs(a.d1(i))));
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) CHECK(std::abs(a.d2(i, j) - b.d2(i, j)) < 1e-4 * (1.0 + std::abs(a.d2(i, j))));
    }
    CHECK_THROWS_AS(jet2(fam, cplx(0.2, 0.2), Model::DISC, 3), OrderUnsupported);
}

TEST_CASE("reduction and lift move between the 4D and 2D descriptions") {
    SuperPotential rho = SuperPotential::thooft({Quat{0, 0, 0, 0}, Quat{2, 0, 0, 0}}, {1.0, 0.5});
    SuperPotential phi = reduce_potential(rho);
    CHECK(phi.poles == std::vector<double>{0.0, 2.0});
    CHECK(phi.weights[0] == doctest::Approx(1.0));
    CHECK(phi.weights[1] == doctest::Approx(0.25));
    CHECK(phi.zeros.size() == 2);

    SuperPotential roundtrip = lift_potential(phi);
    REQUIRE(roundtrip.centers.size() == 2);
    CHECK(qnorm(roundtrip.centers[1] - Quat{2, 0, 0, 0}) < 1e-12);
    CHECK(roundtrip.scales[1] == doctest::Approx(0.5));

    // phi(t + r i) == r * rho(t, r, 0, 0) for symmetric fields.
    for (cplx z : halfplane_samples(10, 3)) {
        double lhs = jet2(phi, z, Model::HALFPLANE, 0).v;
        double rhs = z.imag() * jet4(rho, Quat{z.real(), z.imag(), 0, 0}, 0).v;
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }

    CHECK_THROWS_AS(reduce_potential(SuperPotential::thooft({Quat{0, 0, 1, 0}}, {1.0})), NotSymmetric);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(SuperPotential::thooft({Quat{0, 0, 0, 0}}, {-1.0}), SpecError);
    CHECK_THROWS_AS(SuperPotential::thooft({Quat{0, 0, 0, 0}, Quat{0, 0, 0, 0}}, {1.0, 1.0}), SpecError);
    CHECK_THROWS_AS(SuperPotential::halfplane_sym({cplx(0.0, -1.0)}), SpecError);
    CHECK_THROWS_AS(SuperPotential::halfplane_sym({I, I}), SpecError);
    CHECK_THROWS_AS(SuperPotential::disc_family(0.0), SpecError);
    CHECK_THROWS_AS(SuperPotential::disc_family(2.0, cplx(2.0, 0.0), Branch::CUT_NEG), SpecError);
    CHECK_THROWS_AS(log_jet(SuperPotential::disc_family(2.0), cplx(1.5, 0.5), Model::DISC), SpecError);
    CHECK_THROWS_AS(jet4(SuperPotential::thooft({Quat{0, 0, 0, 0}}, {1.0}), Quat{0, 0, 0, 0}, 2), PoleError);
    CHECK_THROWS_AS(log_jet(SuperPotential::thooft({Quat{0, 0, 0, 0}}, {1.0}), cplx(0, 1), Model::HALFPLANE),
                    SpecError);
}

TEST_CASE("descriptor JSON round trips") {
    SuperPotential rho = SuperPotential::thooft({Quat{0, 0, 0, 0}, Quat{1, 2, 3, 4}}, {1.0, 0.3});
    SuperPotential rho2 = potential_from_json(potential_to_json(rho));
    REQUIRE(rho2.family == Family::THOOFT4);
    REQUIRE(rho2.centers.size() == 2);
    CHECK(qnorm(rho2.centers[1] - Quat{1, 2, 3, 4}) < 1e-14);
    CHECK(rho2.scales[1] == doctest::Approx(0.3));

    SuperPotential phi = SuperPotential::halfplane_sym({I, cplx(1.0, 2.0)});
    SuperPotential phi2 = potential_from_json(potential_to_json(phi));
    REQUIRE(phi2.zeros.size() == 2);
    CHECK(std::abs(phi2.zeros[1] - cplx(1.0, 2.0)) < 1e-9);

    SuperPotential fam = SuperPotential::disc_family(3.7);
    SuperPotential fam2 = potential_from_json(potential_to_json(fam));
    CHECK(fam2.c == doctest::Approx(3.7));
    CHECK(std::abs(fam2.eps - fam.eps) < 1e-14);

    SuperPotential f1 = potential_from_json(potential_to_json(SuperPotential::fhp1()));
    CHECK(f1.family == Family::FHP1);
    CHECK(f1.branch == Branch::CUT_POS);

    CHECK_THROWS_AS(potential_to_json(SuperPotential::generic4([](const Quat&) { return 1.0; })), SpecError);
    CHECK_THROWS_AS(potential_from_json("{\"family\": \"nope\"}"), SpecError);
    CHECK_THROWS_AS(potential_from_json("not json"), SpecError);
}
