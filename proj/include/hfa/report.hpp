#pragma once

// Verification reports: residual suites and invariant integrals evaluated over
// deterministic grids, collected together with the tolerances they were judged
// against, and serialized as JSON (schema 1) or CSV.  The CLI subcommands are
// thin wrappers over run_verify / run_chern / run_sweep; report_consistent
// re-derives every verdict from the stored numbers alone so a written report
// can be checked without re-running anything.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hfa/instanton.hpp"
#include "hfa/potentials.hpp"
#include "hfa/quadrature.hpp"
#include "hfa/vortex.hpp"

namespace hfa {

// max/mean of one named |residual| over the evaluation grid.
struct ResidualStat {
    std::string name;
    double max = 0.0;
    double mean = 0.0;
    int count = 0;
    double tol = 0.0;
    bool pass = false;
};

// One integral invariant: value with the integrator's error bound, optionally
// judged against an expected value.  Entries without an expected value are
// informational and only require convergence.
struct IntegralStat {
    std::string name;
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    std::optional<double> expected;
    double tol = 0.0;
    bool pass = false;
};

struct RunReport {
    int schema = 1;
    std::string command;    // echo of the invocation
    std::string potential;  // descriptor JSON, or the shorthand for black boxes
    std::vector<ResidualStat> residuals;
    std::vector<IntegralStat> integrals;
    bool pass = false;

    std::string to_json() const;
    static RunReport from_json(const std::string& text);
};

// Expected verdict of one entry from its numbers and tolerance alone.
bool residual_ok(const ResidualStat& s);
bool integral_ok(const IntegralStat& s);

// Recompute all verdicts from the stored numbers; false (with `why` filled)
// if any stored flag or the overall verdict disagrees with its own data.
bool report_consistent(const RunReport& r, std::string* why = nullptr);

// Colon shorthands for the built-in potentials:
//   thooft:t1:s1[:t2:s2...]     centers t_i on the real axis with scales s_i;
//                               a "re,im,j,k" token gives a full 4D center
//   halfplane-sym:u,v[:u,v...]  prescribed Higgs zeros u+iv (v > 0)
//   disc-family:c[:re:im]       exponent c, optional unit-modulus coefficient
//   fhp1 | fhp2                 the two patched 3/2-vortex presentations
//   basic-vortex                halfplane-sym:0,1
//   flat                        disc-family:1
//   generic-nonharmonic         1 + |x|^2 on R^4 (fails the field equations;
//                               exercises the failure reporting)
// Throws SpecError on anything else.
SuperPotential potential_from_shorthand(const std::string& text);

// Deterministic low-discrepancy grids.  grid4 fills a ball of the given
// radius; grid2 fills the unit disc, staying away from the origin, the
// boundary and both real-axis rays so every branch choice is evaluable.
std::vector<Quat> grid4(int n, double radius = 2.2);
std::vector<HyperPoint> grid2(int n);

struct VerifyOptions {
    int grid = 200;
    double tol_residual = 1e-10;  // 4D: off-duality density and harmonicity
    double tol_identity = 1e-8;   // 4D: off-duality trace identity, relative
    double tol_vortex = 1e-9;     // 2D: first/second order residuals
    std::optional<Duality> duality;  // 4D ansatz; default SD
    std::optional<VortexKind> kind;  // 2D ansatz; default vortex
};

// Residual suite over the grid.  4D fields: harmonicity, off-duality density
// of the chosen ansatz, and the trace identity |F_off|^2 = (3/8)(lap rho/rho)^2
// relative to the full curvature scale.  2D fields: the two vortex residuals
// and hyperbolic harmonicity relative to phi.
RunReport run_verify(const SuperPotential& p, const VerifyOptions& opt);

struct ChernOptions {
    std::string which = "c1";  // "c1" or "c2"
    Duality duality = Duality::SD;
    QuadConfig quad;
    std::optional<double> expected;
    double tol = -1.0;  // < 0: default 5e-3 for c1, 5e-2 for c2
};

// One Chern number with the integrator's convergence bound as the error.
// Throws QuadratureNotConverged like the underlying integrals.
RunReport run_chern(const SuperPotential& p, const ChernOptions& opt);

// CSV row "name,value,error,converged" with a header.
void chern_csv(std::ostream& out, const RunReport& r);

struct SweepOptions {
    std::vector<double> cs;  // exponents; 0 is rejected up front
    std::vector<double> radii{0.1, 0.01, 1e-3};
    double tol_c1 = 5e-3;
    double tol_hol = 2e-2;  // holonomy-vs-limit bound at the final radius
    QuadConfig quad;
};

// Family sweep: per exponent the first Chern number (judged against c-1) and
// the diagonal holonomy parameter; per (c, radius) the loop integral of the
// connection and the holonomy it exponentiates to.  CSV columns
//   c,r,loop_integral,re_hol,im_hol,alpha,c1
// in long format, one row per (c, radius).
RunReport run_sweep(const SweepOptions& opt, std::ostream& csv);

// Rows of a sweep CSV written by run_sweep (header skipped).
std::vector<std::array<double, 7>> read_sweep_csv(std::istream& in);

}  // namespace hfa
