#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hfa/jets.hpp"
#include "hfa/quaternion.hpp"

namespace hfa {

using cplx = std::complex<double>;

enum class Family { THOOFT4, HALFPLANE_SYM, DISC_FAMILY, FHP1, FHP2, GENERIC };
enum class Model { HALFPLANE, DISC };

// Branch of fractional powers: cut along the negative or the positive real axis.
enum class Branch { CUT_NEG, CUT_POS };

// w^c on the chosen branch. Throws BranchCutError on the cut, PoleError at 0
// for exponents that do not extend continuously.
cplx cpow_branch(cplx w, double c, Branch br);

// Conformal equivalence between the two models of the hyperbolic plane:
// w = (i - z)/(i + z) and z = i(1 - w)/(1 + w).
cplx disc_from_halfplane(cplx z);
cplx halfplane_from_disc(cplx w);

// Value and log-derivative slots of a positive field at a 2D point, in the
// coordinates of `model` (z on the half-plane, w on the disc; lz reads as the
// w-derivative slot there). The two first-order slots may come from different
// scalar functions when the field is only gauge-equivalent to a potential, so
// lzb need not be conj(lz) and lz_zb need not equal lzb_z in general.
struct LogJet2 {
    Model model = Model::HALFPLANE;
    cplx pos{};
    double value = 1.0;
    cplx lz{}, lzb{};
    cplx lz_z{}, lz_zb{}, lzb_z{}, lzb_zb{};
};

// Chain rule transport of a LogJet2 to the other model's coordinates.
LogJet2 transport_logjet(const LogJet2& src, Model target);

// Super-potential: a harmonic positive field generating a connection, either
// on R^4 (centers/scales data) or on the hyperbolic plane (2D families).
struct SuperPotential {
    Family family = Family::GENERIC;

    // THOOFT4: rho = 1 + sum scales_i^2 / |x - centers_i|^2.
    std::vector<Quat> centers;
    std::vector<double> scales;

    // HALFPLANE_SYM: phi = Im H, H(z) = z - sum weights_i / (z - poles_i),
    // with pole data solved so the Higgs zeros land exactly on `zeros`.
    std::vector<cplx> zeros;
    std::vector<double> poles;
    std::vector<double> weights;

    // DISC_FAMILY / FHP1 / FHP2.
    double c = 0.0;
    cplx eps{1.0, 0.0};
    Branch branch = Branch::CUT_NEG;

    // GENERIC black boxes (dimension decided by which one is set).
    std::function<double(const Quat&)> eval4;
    std::function<double(cplx)> eval2;

    Model native = Model::HALFPLANE;

    bool is4d() const;

    static SuperPotential thooft(std::vector<Quat> centers, std::vector<double> scales);
    // Newton-solves pole data from the prescribed Higgs zeros (exact for one
    // zero; the naive pole placement drifts for two or more).
    static SuperPotential halfplane_sym(std::vector<cplx> zeros);
    // Pole data given directly; zeros are then located by Newton search.
    static SuperPotential halfplane_from_poles(std::vector<double> poles, std::vector<double> weights);
    static SuperPotential disc_family(double c, cplx eps, Branch br = Branch::CUT_NEG);
    static SuperPotential disc_family(double c);  // eps = exp(2 pi i c)
    static SuperPotential fhp1();
    static SuperPotential fhp2();
    static SuperPotential generic4(std::function<double(const Quat&)> f);
    static SuperPotential generic2(Model m, std::function<double(cplx)> f);
};

// Jet of the 4D field at x up to `order` <= 4 (analytic for THOOFT4, finite
// differences for GENERIC).
Jet4 jet4(const SuperPotential& rho, const Quat& x, int order);

// Jet of the 2D field in native-model coordinates, order <= 3 for
// HALFPLANE_SYM/GENERIC and <= 2 for the disc families.
Jet2 jet2(const SuperPotential& phi, cplx pos, Model model, int order);

// Value and log-derivative slots of a 2D family, transported to `model`.
LogJet2 log_jet(const SuperPotential& phi, cplx pos, Model model);

// Laplacian(rho) at x; zero identifies the self-duality locus.
double harmonic_residual4(const SuperPotential& rho, const Quat& x);

// Hyperbolic Laplacian of phi at a 2D point.
double harmonic_residual_hyp(const SuperPotential& phi, cplx pos, Model model);

// Scalar curvature of the conformally scaled metric rho^(1/2) * (flat):
// R' = 6 rho^{-3} * Laplacian(rho).
double scalar_curvature_conformal(const SuperPotential& rho, const Quat& x);

// phi(z) = r * rho(x)|_{x = t + r i} for rotationally symmetric rho; these move
// between the 4D and 2D descriptions without changing the field.
SuperPotential reduce_potential(const SuperPotential& rho4);
SuperPotential lift_potential(const SuperPotential& phi2);

// Descriptor (de)serialization for reports and spec files (GENERIC excluded).
std::string potential_to_json(const SuperPotential& p);
SuperPotential potential_from_json(const std::string& text);

namespace detail {
// H, H', H'' (and H''' at order 3) for the half-plane pole data.
void halfplane_H(const SuperPotential& p, cplx z, int order, cplx out[4]);
// Newton search for the critical points of H given pole data.
std::vector<cplx> halfplane_critical_points(const std::vector<double>& poles,
                                            const std::vector<double>& weights);
}  // namespace detail

}  // namespace hfa
