#include "hfa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

// 16-point Gauss-Legendre rule on [-1,1]: positive abscissas and weights,
// mirrored about the midpoint when laid onto a panel.
constexpr int kGLHalf = 8;
constexpr double kGLx[kGLHalf] = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGLw[kGLHalf] = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

double pairwise_sum(const double* v, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

// Index-sliced parallel fill; writers own disjoint slots, so the reduction
// order (and hence the result bit pattern) is independent of the worker count.
void parallel_fill(size_t n, int workers, const std::function<void(size_t)>& job) {
    if (workers <= 1 || n < 512) {
        for (size_t i = 0; i < n; ++i) job(i);
        return;
    }
    size_t nw = std::min(static_cast<size_t>(workers), n);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    pool.reserve(nw);
    for (size_t t = 0; t < nw; ++t) {
        pool.emplace_back([&, t] {
            size_t lo = t * n / nw, hi = (t + 1) * n / nw;
            try {
                for (size_t i = lo; i < hi; ++i) job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void fill_gl_panel(double a, double b, double* node, double* weight) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int j = 0; j < kGLHalf; ++j) {
        node[2 * j] = c - h * kGLx[j];
        node[2 * j + 1] = c + h * kGLx[j];
        weight[2 * j] = weight[2 * j + 1] = h * kGLw[j];
    }
}

struct AdaptState {
    double rel_tol = 0.0;
    int max_depth = 20;
    bool ok = true;
    double err_sum = 0.0;
};

// Dyadic refinement driven by parent-vs-children disagreement. The accepted
// value is always the children's sum; diff/15 is the usual error proxy for a
// nested pair of polynomial rules.
template <typename Panel>
double adapt_radial(const Panel& P, double a, double b, double pab, int depth, AdaptState& st) {
    double m = 0.5 * (a + b);
    double pl = P(a, m), pr = P(m, b);
    double diff = pab - (pl + pr);
    bool fine_enough = std::abs(diff) <= st.rel_tol * (std::abs(pl) + std::abs(pr) + 1.0);
    if (fine_enough || (b - a) < 1e-12 || depth >= st.max_depth) {
        if (!fine_enough && depth >= st.max_depth && (b - a) >= 1e-12) st.ok = false;
        st.err_sum += std::abs(diff) / 15.0;
        return pl + pr;
    }
    return adapt_radial(P, a, m, pl, depth + 1, st) + adapt_radial(P, m, b, pr, depth + 1, st);
}

void validate(const QuadConfig& cfg) {
    if (cfg.gl_degree != 16) throw SpecError("quadrature: only the 16-point radial rule is wired in");
    if (cfg.deltas.empty()) throw SpecError("quadrature: empty delta sequence");
    for (size_t i = 0; i < cfg.deltas.size(); ++i) {
        if (!(cfg.deltas[i] > 0.0) || cfg.deltas[i] >= 0.5) throw SpecError("quadrature: deltas must lie in (0, 0.5)");
        if (i > 0 && !(cfg.deltas[i] < cfg.deltas[i - 1])) throw SpecError("quadrature: deltas must decrease strictly");
    }
    if (!(cfg.exclusion >= 0.0)) throw SpecError("quadrature: negative exclusion radius");
    if (!(cfg.radius_mid > 0.0) || !(cfg.radius > cfg.radius_mid))
        throw SpecError("quadrature: need 0 < radius_mid < radius");
    if (cfg.max_depth < 1 || cfg.n_theta < 8 || cfg.s3_psi < 1 || cfg.s3_theta < 1 || cfg.s3_phi < 8)
        throw SpecError("quadrature: resolution out of range");
}

// Polynomial extrapolation of the stage values to delta -> 0 (Neville at 0).
double neville_to_zero(const std::vector<double>& deltas, const std::vector<double>& I, double* correction) {
    size_t n = I.size();
    std::vector<double> T = I;
    if (correction) *correction = 0.0;
    double last = T[n - 1];
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n - 1; i >= j; --i) {
            T[i] = (deltas[i - j] * T[i] - deltas[i] * T[i - 1]) / (deltas[i - j] - deltas[i]);
            if (i == j) break;
        }
        if (j == n - 1 && correction) *correction = std::abs(T[n - 1] - last);
        last = T[n - 1];
    }
    return T[n - 1];
}

}  // namespace

int resolve_workers(int requested) {
    if (requested > 0) return std::min(requested, 64);
    if (const char* env = std::getenv("HFA_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return std::min(v, 64);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

QuadResult integrate_disc(const std::function<double(cplx)>& f, const QuadConfig& cfg) {
    validate(cfg);
    const int workers = resolve_workers(cfg.workers);
    const int n_theta = cfg.n_theta + (cfg.n_theta % 2);
    const double dth = 2.0 * kPi / n_theta;
    QuadResult res;

    auto panel = [&](double a, double b) {
        double rnode[16], rw[16];
        fill_gl_panel(a, b, rnode, rw);
        size_t n = 16 * static_cast<size_t>(n_theta);
        std::vector<double> vals(n);
        parallel_fill(n, workers, [&](size_t idx) {
            int gi = static_cast<int>(idx) / n_theta;
            int k = static_cast<int>(idx) % n_theta;
            vals[idx] = f(std::polar(rnode[gi], dth * (k + 0.5)));
        });
        res.evals += static_cast<long>(n);
        double total = 0.0;
        for (int gi = 0; gi < 16; ++gi)
            total += rw[gi] * rnode[gi] * dth * pairwise_sum(vals.data() + static_cast<size_t>(gi) * n_theta, n_theta);
        return total;
    };

    // The cap inside the exclusion radius is charged at the circle's values:
    // the integrands used here are finite but numerically stiff near 0.
    double cap = 0.0;
    if (cfg.exclusion > 0.0) {
        std::vector<double> vals(static_cast<size_t>(n_theta));
        parallel_fill(vals.size(), workers, [&](size_t k) {
            vals[k] = f(std::polar(cfg.exclusion, dth * (static_cast<double>(k) + 0.5)));
        });
        res.evals += n_theta;
        cap = 0.5 * cfg.exclusion * cfg.exclusion * dth * pairwise_sum(vals.data(), vals.size());
    }

    bool panels_ok = true;
    double panel_err = 0.0;
    for (double delta : cfg.deltas) {
        double lo = cfg.exclusion, hi = 1.0 - delta;
        if (!(lo < hi)) throw SpecError("integrate_disc: exclusion exceeds the boundary cutoff");
        double mid = lo < 0.4 ? 0.5 : 0.5 * (lo + hi);
        AdaptState st;
        st.rel_tol = 0.05 * cfg.tol;
        st.max_depth = cfg.max_depth;
        double I = adapt_radial(panel, lo, mid, panel(lo, mid), 0, st) +
                   adapt_radial(panel, mid, hi, panel(mid, hi), 0, st);
        panels_ok = panels_ok && st.ok;
        panel_err += st.err_sum;
        res.stage_values.push_back(I + cap);
    }

    double corr = 0.0;
    res.value = neville_to_zero(cfg.deltas, res.stage_values, &corr);
    res.error_estimate = corr + panel_err;

    // Stages should close in on the extrapolant, up to the quadrature noise
    // already charged to the error estimate. A slice of the stage spread keeps
    // the check meaningful when the integral is zero and the stages pure noise.
    double spread = 0.0;
    for (double s : res.stage_values)
        spread = std::max(spread, std::abs(s - res.stage_values[0]));
    const double slack = res.error_estimate + 0.2 * spread + 1e-12 * (1.0 + std::abs(res.value));
    bool monotone = true;
    for (size_t i = 1; i < res.stage_values.size(); ++i)
        if (std::abs(res.stage_values[i] - res.value) >
            std::abs(res.stage_values[i - 1] - res.value) + slack)
            monotone = false;
    res.converged = panels_ok && monotone && res.error_estimate <= cfg.tol * std::max(1.0, std::abs(res.value));
    return res;
}

QuadResult integrate_ball4(const std::function<double(const Quat&)>& f, const QuadConfig& cfg) {
    validate(cfg);
    const int workers = resolve_workers(cfg.workers);
    QuadResult res;

    auto fx = [&](Quat x) {
        for (const Quat& c : cfg.exclude_centers) {
            Quat d = x - c;
            double n = qnorm(d);
            if (n < cfg.exclusion) {
                x = n < 1e-300 ? c + Quat::unit(0) * cfg.exclusion : c + d * (cfg.exclusion / n);
                break;
            }
        }
        return f(x);
    };

    // 3-sphere product rule: psi, theta via composite 16-point panels, phi by
    // an offset trapezoid. Angular weights absorb sin^2(psi) sin(theta).
    auto angle_nodes = [](int requested, std::vector<double>& node, std::vector<double>& weight) {
        int panels = std::max(1, (requested + 15) / 16);
        node.resize(static_cast<size_t>(panels) * 16);
        weight.resize(node.size());
        for (int p = 0; p < panels; ++p)
            fill_gl_panel(kPi * p / panels, kPi * (p + 1) / panels, node.data() + 16 * p, weight.data() + 16 * p);
    };
    std::vector<double> psn, psw, thn, thw;
    angle_nodes(cfg.s3_psi, psn, psw);
    angle_nodes(cfg.s3_theta, thn, thw);
    for (size_t i = 0; i < psn.size(); ++i) psw[i] *= sq(std::sin(psn[i]));
    for (size_t i = 0; i < thn.size(); ++i) thw[i] *= std::sin(thn[i]);
    const int n_phi = cfg.s3_phi + (cfg.s3_phi % 2);
    const double dphi = 2.0 * kPi / n_phi;

    const size_t n_ps = psn.size(), n_th = thn.size(), grid = n_ps * n_th * static_cast<size_t>(n_phi);

    // Shared shell sampler: `rad` maps the panel coordinate to a radius and
    // `jac` carries the corresponding radial measure.
    auto panel_with = [&](double a, double b, auto rad, auto jac) {
        double rnode[16], rw[16];
        fill_gl_panel(a, b, rnode, rw);
        size_t n = 16 * grid;
        std::vector<double> vals(n);
        parallel_fill(n, workers, [&](size_t idx) {
            size_t gi = idx / grid, rest = idx % grid;
            size_t ip = rest / (n_th * n_phi);
            size_t it = (rest / n_phi) % n_th;
            size_t ik = rest % static_cast<size_t>(n_phi);
            double ps = psn[ip], th = thn[it], ph = dphi * (static_cast<double>(ik) + 0.5);
            double sp = std::sin(ps), st = std::sin(th);
            Quat w{std::cos(ps), sp * std::cos(th), sp * st * std::cos(ph), sp * st * std::sin(ph)};
            vals[idx] = psw[ip] * thw[it] * fx(w * rad(rnode[gi]));
        });
        res.evals += static_cast<long>(n);
        double total = 0.0;
        for (size_t gi = 0; gi < 16; ++gi) {
            double shell = dphi * pairwise_sum(vals.data() + gi * grid, grid);
            total += rw[gi] * jac(rnode[gi]) * shell;
        }
        return total;
    };
    auto panel = [&](double a, double b) {
        return panel_with(a, b, [](double r) { return r; }, [](double r) { return r * r * r; });
    };
    // Exterior of the ball under u = 1/r: r^3 dr becomes u^-5 du on (0, 1/R],
    // smooth at u = 0 for densities decaying at least like |x|^-8.
    auto panel_u = [&](double a, double b) {
        return panel_with(a, b, [](double u) { return 1.0 / u; },
                          [](double u) { return 1.0 / (u * u * u * u * u); });
    };

    std::vector<double> edges = {0.0};
    for (const Quat& c : cfg.exclude_centers) {
        double rc = qnorm(c);
        if (rc > 1e-9 && rc < cfg.radius_mid) edges.push_back(rc);
    }
    for (double b : cfg.radial_breaks)
        if (b > 0.0 && b < cfg.radius_mid) edges.push_back(b);
    edges.push_back(cfg.radius_mid);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                edges.end());

    AdaptState st;
    st.rel_tol = 0.05 * cfg.tol;
    st.max_depth = cfg.max_depth;
    double I_mid = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        I_mid += adapt_radial(panel, edges[i], edges[i + 1], panel(edges[i], edges[i + 1]), 0, st);

    std::vector<double> outer = {cfg.radius_mid};
    for (double b : cfg.radial_breaks)
        if (b > cfg.radius_mid && b < cfg.radius) outer.push_back(b);
    outer.push_back(cfg.radius);
    std::sort(outer.begin(), outer.end());
    outer.erase(std::unique(outer.begin(), outer.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                outer.end());
    double I_annulus = 0.0;
    for (size_t i = 0; i + 1 < outer.size(); ++i)
        I_annulus += adapt_radial(panel, outer[i], outer[i + 1], panel(outer[i], outer[i + 1]), 0, st);
    double I_full = I_mid + I_annulus;

    double ucut = 1.0 / cfg.radius;
    double I_tail = adapt_radial(panel_u, 0.0, ucut, panel_u(0.0, ucut), 0, st);
    double I_inf = I_full + I_tail;

    res.stage_values = {I_mid, I_full, I_inf};
    res.value = I_inf;
    res.error_estimate = st.err_sum;
    res.converged = st.ok && res.error_estimate <= cfg.tol * std::max(1.0, std::abs(res.value));
    return res;
}

double loop_integral(const std::function<double(double, cplx)>& g, double r, int n, double* error_estimate) {
    if (n < 8) n = 8;
    if (n % 2) ++n;
    auto sum_at = [&](int m) {
        std::vector<double> vals(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) {
            double th = 2.0 * kPi * (k + 0.5) / m;
            vals[static_cast<size_t>(k)] = g(th, std::polar(r, th));
        }
        return 2.0 * kPi / m * pairwise_sum(vals.data(), vals.size());
    };
    double coarse = sum_at(n / 2);
    double fine = sum_at(n);
    if (error_estimate) *error_estimate = std::abs(fine - coarse);
    return fine;
}

}  // namespace hfa
