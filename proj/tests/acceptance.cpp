// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Each check states its tolerance inline; timings are wall-clock seconds.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hfa/gauge.hpp"
#include "hfa/instanton.hpp"
#include "hfa/jets.hpp"
#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/reduction.hpp"
#include "hfa/report.hpp"
#include "hfa/vortex.hpp"

using namespace hfa;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failed = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void line(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%2d] %s  %-36s %s\n", idx, ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

// Random points in the ball |x| <= R keeping a margin from every center.
std::vector<Quat> ball_points(const std::vector<Quat>& centers, size_t n, double R, double keep,
                              unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-R, R);
    std::vector<Quat> out;
    while (out.size() < n) {
        Quat x{u(rng), u(rng), u(rng), u(rng)};
        if (qnorm(x) > R) continue;
        bool ok = true;
        for (const Quat& c : centers)
            if (qnorm(x - c) < keep) ok = false;
        if (ok) out.push_back(x);
    }
    return out;
}

// The three superposed test fields: 1, 2 and 3 centers, real and quaternionic.
std::vector<SuperPotential> superposed_fields() {
    std::mt19937 rng(2024u);
    std::uniform_real_distribution<double> u(-2.0, 2.0), s(0.6, 1.4);
    auto rq = [&]() { return Quat{u(rng), u(rng), u(rng), u(rng)}; };
    std::vector<SuperPotential> pots;
    pots.push_back(SuperPotential::thooft({Quat::real(u(rng))}, {s(rng)}));
    pots.push_back(SuperPotential::thooft({rq(), rq()}, {s(rng), s(rng)}));
    pots.push_back(SuperPotential::thooft({rq(), rq(), Quat::real(u(rng))}, {s(rng), s(rng), s(rng)}));
    return pots;
}

SuperPotential basic_instanton() { return SuperPotential::thooft({Quat{}}, {1.0}); }

SuperPotential two_center_instanton() {
    return SuperPotential::thooft({Quat{}, Quat{3.0, 0.5, 0.0, 0.0}}, {1.0, 0.7});
}

SuperPotential basic_vortex() { return SuperPotential::halfplane_sym({cplx(0.0, 1.0)}); }

SuperPotential two_zero_vortex() {
    return SuperPotential::halfplane_sym({cplx(0.0, 1.0), cplx(1.0, 2.0)});
}

// --------------------------------------------------------------------------

std::pair<bool, std::string> crit1_offduality() {
    double t0 = now_s();
    double worst = 0.0;
    for (const SuperPotential& rho : superposed_fields()) {
        for (const Quat& x : ball_points(rho.centers, 200, 5.0, 0.3, 7u)) {
            for (Duality d : {Duality::SD, Duality::ASD}) {
                auto [plus, minus] = curvature_densities(rho, x, d);
                worst = std::max(worst, d == Duality::SD ? minus : plus);
            }
        }
    }
    SuperPotential ctrl = SuperPotential::generic4([](const Quat& x) { return 1.0 + qnorm2(x); });
    double worst_ctrl = 0.0;
    for (const Quat& x : ball_points({}, 200, 5.0, 0.0, 11u)) {
        double rho = 1.0 + qnorm2(x);
        double want = 0.375 * 64.0 / (rho * rho);
        auto [plus, minus] = curvature_densities(ctrl, x, Duality::SD);
        worst_ctrl = std::max(worst_ctrl, std::abs(minus - want) / want);
    }
    double dt = now_s() - t0;
    bool ok = worst < 1e-10 && worst_ctrl < 1e-8 && dt < 10.0;
    return {ok, fmt("max off-dual %.2e (tol 1e-10), control %.2e (tol 1e-8), %.1fs", worst,
                    worst_ctrl, dt)};
}

std::pair<bool, std::string> crit2_density_identity() {
    double t0 = now_s();
    double worst = 0.0;
    for (const SuperPotential& rho : superposed_fields()) {
        for (const Quat& x : ball_points(rho.centers, 200, 5.0, 0.5, 13u)) {
            double want = -0.25 * biharmonic_log4(jet4(rho, x, 4));
            auto [plus, minus] = curvature_densities(rho, x, Duality::SD);
            worst = std::max(worst, std::abs(plus - want) / std::max(std::abs(want), 1e-300));
        }
    }
    double dt = now_s() - t0;
    bool ok = worst < 1e-8 && dt < 10.0;
    return {ok, fmt("max relative defect %.2e (tol 1e-8), %.1fs", worst, dt)};
}

std::pair<bool, std::string> crit3_chern2() {
    double t0 = now_s();
    double c_basic = chern2(basic_instanton(), Duality::SD);
    double t1 = now_s();
    double c_two = chern2(two_center_instanton(), Duality::SD);
    double t2 = now_s();
    bool ok = std::abs(c_basic - 1.0) < 5e-2 && std::abs(c_two - 2.0) < 5e-2 &&
              (t1 - t0) < 60.0 && (t2 - t1) < 60.0;
    return {ok, fmt("basic %.4f (want 1 +- 5e-2, %.1fs), two-center %.4f (want 2 +- 5e-2, %.1fs)",
                    c_basic, t1 - t0, c_two, t2 - t1)};
}

std::pair<bool, std::string> crit4_vortex_residuals() {
    double t0 = now_s();
    std::vector<SuperPotential> pots = {basic_vortex(), two_zero_vortex(), SuperPotential::fhp1(),
                                        SuperPotential::fhp2()};
    for (double c : {1.0, 2.0, 2.5, 3.7}) pots.push_back(SuperPotential::disc_family(c));
    double worst = 0.0;
    auto pts = grid2(200);
    for (const SuperPotential& p : pots) {
        for (const HyperPoint& pt : pts) {
            auto [r1, r2] = vortex_residuals(p, pt, VortexKind::VORTEX);
            worst = std::max({worst, r1, r2});
        }
    }
    double dt = now_s() - t0;
    bool ok = worst < 1e-9 && dt < 10.0;
    return {ok, fmt("max residual %.2e over 8 fields x 200 points (tol 1e-9), %.1fs", worst, dt)};
}

std::pair<bool, std::string> crit5_chern1() {
    struct Item {
        SuperPotential p;
        double want;
    };
    std::vector<Item> items;
    items.push_back({basic_vortex(), 1.0});
    items.push_back({SuperPotential::fhp2(), 1.5});
    for (double c : {1.0, 1.5, 2.0, 2.5, 3.7}) items.push_back({SuperPotential::disc_family(c), c - 1.0});
    double worst = 0.0, slowest = 0.0;
    for (const Item& it : items) {
        double t0 = now_s();
        double c1v = chern1(it.p);
        slowest = std::max(slowest, now_s() - t0);
        worst = std::max(worst, std::abs(c1v - it.want));
    }
    bool ok = worst < 5e-3 && slowest < 30.0;
    return {ok, fmt("max |c1 - expected| %.2e over 7 fields (tol 5e-3), slowest %.1fs", worst,
                    slowest)};
}

std::pair<bool, std::string> crit6_reduction_charges() {
    double t0 = now_s();
    auto [c2_b, c1_b] = chern_reduction_check(basic_vortex());
    auto [c2_t, c1_t] = chern_reduction_check(two_zero_vortex());
    double dt = now_s() - t0;
    bool ok = std::abs(c2_b - c1_b) < 5e-2 && std::abs(c2_t - c1_t) < 5e-2;
    return {ok, fmt("basic c2 %.3f vs c1 %.3f; two-zero c2 %.3f vs c1 %.3f (tol 5e-2), %.1fs",
                    c2_b, c1_b, c2_t, c1_t, dt)};
}

std::pair<bool, std::string> crit7_higgs_zeros() {
    double t0 = now_s();
    SuperPotential p = two_zero_vortex();
    auto zeros = higgs_zeros(p, cplx(-2.0, 0.05), cplx(3.0, 3.5));
    const std::vector<cplx> want = {cplx(0.0, 1.0), cplx(1.0, 2.0)};
    double worst_gap = 0.0;
    bool found_all = true;
    for (cplx target : want) {
        double best = 1e300;
        for (const HiggsZero& z : zeros) best = std::min(best, std::abs(z.point.coord - target));
        worst_gap = std::max(worst_gap, best);
        if (!(best < 1e-8)) found_all = false;
    }
    double c1v = chern1(p);
    double dt = now_s() - t0;
    bool ok = found_all && std::abs(c1v - 2.0) < 5e-3;
    return {ok, fmt("worst zero gap %.2e (tol 1e-8), c1 %.4f (want 2 +- 5e-3), %.1fs", worst_gap,
                    c1v, dt)};
}

std::pair<bool, std::string> crit8_gauge_machinery() {
    double t0 = now_s();
    // (a) the pair generated by a harmonic phase: residuals + explicit relation
    GaugeChi chi = GaugeChi::square();
    double worst_pair = 0.0;
    int used = 0;
    for (const HyperPoint& pt : grid2(120)) {
        cplx w = pt.coord;
        double s2 = std::abs(std::sin(2.0 * std::imag(w * w)));
        if (s2 < 1e-3) continue;  // the pair degenerates where e^{2i chi} = 1
        ++used;
        auto [jp, jm] = chi_pair_logjet(chi, pt);
        auto [rp1, rp2] = residuals_from_logjet(jp, VortexKind::VORTEX);
        auto [rm1, rm2] = residuals_from_logjet(jm, VortexKind::VORTEX);
        worst_pair = std::max({worst_pair, rp1, rp2, rm1, rm2});
        // explicit gauge relation between the two members
        auto [sp, sm] = pair_from_chi(chi, pt);
        VortexSample carried = apply_gauge(sp, chi);
        worst_pair = std::max({worst_pair, std::abs(carried.a1 - sm.a1), std::abs(carried.a2 - sm.a2),
                               std::abs(carried.phi - sm.phi)});
        cplx E = std::exp(cplx(0.0, 2.0) * std::imag(w * w));
        worst_pair = std::max(worst_pair, std::abs(jm.lz - E * jp.lz) / std::max(1.0, std::abs(jp.lz)));
    }
    // (b) patch functions: radical route vs closed form at 500 random points
    std::mt19937 rng(77u);
    std::uniform_real_distribution<double> ur(0.05, 0.95), ua(-kPi, kPi);
    double worst_T = 0.0;
    int n = 0;
    while (n < 500) {
        cplx w = std::polar(ur(rng), ua(rng));
        if (std::abs(w.imag()) < 1e-3) continue;  // stay off the patch meeting line
        ++n;
        auto [t1v, t2v] = fhp_T(w);
        cplx f = fhp_f(w);
        worst_T = std::max({worst_T, std::abs(t2v - f.real()), std::abs(t1v - f.imag())});
    }
    // (c) the cut-crossing gauge carries one presentation to the other
    double worst_mono = 0.0;
    for (double c : {1.3, 2.5, 3.7}) {
        MonodromyFamily fam = monodromy_family(c);
        for (const HyperPoint& pt : grid2(60)) {
            cplx w = pt.coord;
            LogJet2 a = log_jet(fam.phi, w, Model::DISC);
            LogJet2 b = log_jet(fam.phi_prime, w, Model::DISC);
            cplx g = monodromy_gauge(fam, w);
            cplx db = dbar_log_monodromy_gauge(fam, w);
            double scale = std::max({1.0, std::abs(a.lz), std::abs(a.lzb)});
            worst_mono = std::max(worst_mono, std::abs(b.lz - g * a.lz) / scale);
            worst_mono = std::max(worst_mono, std::abs(b.lzb - (a.lzb - db)) / scale);
        }
    }
    double dt = now_s() - t0;
    bool ok = used >= 80 && worst_pair < 1e-9 && worst_T < 1e-10 && worst_mono < 1e-9;
    return {ok, fmt("pair %.2e (tol 1e-9), patch %.2e (tol 1e-10), crossing %.2e (tol 1e-9), %.1fs",
                    worst_pair, worst_T, worst_mono, dt)};
}

std::pair<bool, std::string> crit9_holonomy() {
    double t0 = now_s();
    bool ok = true;
    double worst_final = 0.0;
    for (double c : {2.0, 2.5, 3.7}) {
        MonodromyFamily fam = monodromy_family(c);
        cplx limit = std::exp(cplx(0.0, 2.0 * kPi * c));
        double prev = 1e300;
        double final_defect = 0.0;
        for (double r : {0.1, 0.01, 1e-3}) {
            double d = std::abs(holonomy(fam, r) - limit);
            ok = ok && d < prev;
            prev = d;
            final_defect = d;
        }
        ok = ok && final_defect < 0.02;
        worst_final = std::max(worst_final, final_defect);
    }
    double alpha = holonomy_parameter(2.5);
    ok = ok && alpha == 0.25;
    double dt = now_s() - t0;
    return {ok, fmt("worst defect at r=1e-3: %.2e (tol 0.02), decreasing, alpha(2.5)=%.4g, %.1fs",
                    worst_final, alpha, dt)};
}

std::pair<bool, std::string> crit10_rational_crosscheck() {
    double t0 = now_s();
    double worst = 0.0;
    {
        AdhmData one = AdhmData::make({0.0}, {1.0});
        SuperPotential pot = basic_instanton();
        auto field = [&](const Quat& p) { return adhm_connection(one, p); };
        for (const Quat& x : ball_points(pot.centers, 50, 3.0, 0.4, 31u)) {
            auto [plus, minus] = curvature_densities(pot, x, Duality::ASD);
            double fd = density(curvature_fd(field, x));
            worst = std::max(worst, std::abs(fd - (plus + minus)) / (1.0 + plus + minus));
        }
    }
    {
        AdhmData two = AdhmData::make({0.0, 3.0}, {1.0, 1.0});
        SuperPotential pot = SuperPotential::thooft({Quat{}, Quat::real(3.0)}, {1.0, 1.0});
        auto field = [&](const Quat& p) { return adhm_connection(two, p); };
        for (const Quat& x : ball_points(pot.centers, 50, 4.0, 0.4, 37u)) {
            auto [plus, minus] = curvature_densities(pot, x, Duality::ASD);
            double fd = density(curvature_fd(field, x));
            worst = std::max(worst, std::abs(fd - (plus + minus)) / (1.0 + plus + minus));
        }
    }
    double dt = now_s() - t0;
    bool ok = worst < 1e-4;
    return {ok, fmt("max density mismatch %.2e over k=1,2 x 50 points (tol 1e-4), %.1fs", worst, dt)};
}

std::pair<bool, std::string> crit11_energy() {
    double t0 = now_s();
    double e_basic = reduced_action(basic_vortex());
    double e_fhp = reduced_action(SuperPotential::fhp2());
    double dt = now_s() - t0;
    double r_basic = std::abs(e_basic - 4.0 * kPi) / (4.0 * kPi);
    double r_fhp = std::abs(e_fhp - 6.0 * kPi) / (6.0 * kPi);
    bool ok = r_basic < 2e-2 && r_fhp < 2e-2;
    return {ok, fmt("basic %.4f vs 4pi (rel %.2e), patched %.4f vs 6pi (rel %.2e), tol 2e-2, %.1fs",
                    e_basic, r_basic, e_fhp, r_fhp, dt)};
}

}  // namespace

int main() {
    struct Crit {
        int idx;
        const char* name;
        std::function<std::pair<bool, std::string>()> fn;
    };
    const std::vector<Crit> crits = {
        {1, "off-duality of superposed fields", crit1_offduality},
        {2, "curvature density identity", crit2_density_identity},
        {3, "instanton charge counts centers", crit3_chern2},
        {4, "vortex equation residuals", crit4_vortex_residuals},
        {5, "vortex charge reproduction", crit5_chern1},
        {6, "charge survives reduction", crit6_reduction_charges},
        {7, "prescribed Higgs zeros", crit7_higgs_zeros},
        {8, "gauge machinery", crit8_gauge_machinery},
        {9, "small-loop holonomy limit", crit9_holonomy},
        {10, "rational construction cross-check", crit10_rational_crosscheck},
        {11, "energy equals 4 pi charge", crit11_energy},
    };
    for (const Crit& c : crits) {
        try {
            auto [ok, detail] = c.fn();
            line(c.idx, c.name, ok, detail);
        } catch (const std::exception& e) {
            line(c.idx, c.name, false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d/11 criteria passed\n", 11 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
