#pragma once

#include <array>

#include "hfa/errors.hpp"

namespace hfa {

namespace detail {

// Rank of a sorted multi-index among all sorted tuples over {0,1,2,3},
// lexicographic order. Built once; cheap lookups after.
int rank2(int a, int b);
int rank3(int a, int b, int c);
int rank4(int a, int b, int c, int d);

void sort2(int& a, int& b);
void sort3(int& a, int& b, int& c);
void sort4(int& a, int& b, int& c, int& d);

}  // namespace detail

// Partial derivatives of a scalar field on R^4 at a point, symmetric storage:
// one slot per sorted multi-index, so mixed-partial symmetry holds exactly.
struct Jet4 {
    int order = 0;
    double v = 0.0;
    std::array<double, 4> g1{};    // gradient
    std::array<double, 10> g2{};   // sorted pairs
    std::array<double, 20> g3{};   // sorted triples
    std::array<double, 35> g4{};   // sorted quadruples

    double d1(int a) const {
        need(1);
        return g1[static_cast<size_t>(a)];
    }
    double d2(int a, int b) const {
        need(2);
        detail::sort2(a, b);
        return g2[static_cast<size_t>(detail::rank2(a, b))];
    }
    double d3(int a, int b, int c) const {
        need(3);
        detail::sort3(a, b, c);
        return g3[static_cast<size_t>(detail::rank3(a, b, c))];
    }
    double d4(int a, int b, int c, int d) const {
        need(4);
        detail::sort4(a, b, c, d);
        return g4[static_cast<size_t>(detail::rank4(a, b, c, d))];
    }

    double& at2(int a, int b) {
        detail::sort2(a, b);
        return g2[static_cast<size_t>(detail::rank2(a, b))];
    }
    double& at3(int a, int b, int c) {
        detail::sort3(a, b, c);
        return g3[static_cast<size_t>(detail::rank3(a, b, c))];
    }
    double& at4(int a, int b, int c, int d) {
        detail::sort4(a, b, c, d);
        return g4[static_cast<size_t>(detail::rank4(a, b, c, d))];
    }

    // Geometer's Laplacian: minus the trace of the Hessian.
    double laplacian() const {
        need(2);
        return -(d2(0, 0) + d2(1, 1) + d2(2, 2) + d2(3, 3));
    }

   private:
    void need(int k) const {
        if (order < k) throw OrderUnsupported("Jet4: order " + std::to_string(k) + " not populated");
    }
};

// Same idea in two variables (t,r) on the half-plane or (u,v) on the disc,
// up to third order.
struct Jet2 {
    int order = 0;
    double v = 0.0;
    std::array<double, 2> g1{};
    std::array<double, 3> g2{};  // uu, uv, vv
    std::array<double, 4> g3{};  // uuu, uuv, uvv, vvv

    double d1(int a) const {
        need(1);
        return g1[static_cast<size_t>(a)];
    }
    double d2(int a, int b) const {
        need(2);
        return g2[static_cast<size_t>(a + b)];
    }
    double d3(int a, int b, int c) const {
        need(3);
        return g3[static_cast<size_t>(a + b + c)];
    }

    double& at2(int a, int b) { return g2[static_cast<size_t>(a + b)]; }
    double& at3(int a, int b, int c) { return g3[static_cast<size_t>(a + b + c)]; }

   private:
    void need(int k) const {
        if (order < k) throw OrderUnsupported("Jet2: order " + std::to_string(k) + " not populated");
    }
};

// Fourth-order contraction sum_{mu,nu} d^2_mu d^2_nu log(rho) from the jet of
// rho itself; with the sign convention above this is Laplacian(Laplacian(log rho)).
double biharmonic_log4(const Jet4& rho);

}  // namespace hfa
