#include "hfa/jets.hpp"

#include <algorithm>
#include <array>

namespace hfa {
namespace detail {

void sort2(int& a, int& b) {
    if (a > b) std::swap(a, b);
}
void sort3(int& a, int& b, int& c) {
    sort2(a, b);
    sort2(b, c);
    sort2(a, b);
}
void sort4(int& a, int& b, int& c, int& d) {
    sort2(a, b);
    sort2(c, d);
    sort2(a, c);
    sort2(b, d);
    sort2(b, c);
}

namespace {

struct RankTables {
    int r2[4][4];
    int r3[4][4][4];
    int r4[4][4][4][4];
    RankTables() {
        int n = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) r2[a][b] = n++;
        n = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c) r3[a][b][c] = n++;
        n = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c)
                    for (int d = c; d < 4; ++d) r4[a][b][c][d] = n++;
    }
};

const RankTables& tables() {
    static const RankTables t;
    return t;
}

}  // namespace

int rank2(int a, int b) { return tables().r2[a][b]; }
int rank3(int a, int b, int c) { return tables().r3[a][b][c]; }
int rank4(int a, int b, int c, int d) { return tables().r4[a][b][c][d]; }

}  // namespace detail

double biharmonic_log4(const Jet4& rho) {
    // Fourth log-derivative L_{abcd} expanded in derivatives of rho, then
    // contracted over (a,a,b,b). Grouping follows the standard log expansion:
    //   L4 = r4/r - (4 terms) r3 r1 / r^2 - (3 terms) r2 r2 / r^2
    //        + 2 (6 terms) r2 r1 r1 / r^3 - 6 r1 r1 r1 r1 / r^4.
    const double r = rho.v;
    const double r2i = 1.0 / (r * r);
    const double r3i = r2i / r;
    const double r4i = r2i * r2i;

    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double p4 = rho.d4(a, a, b, b);
            const double t3 = 2.0 * rho.d3(a, a, b) * rho.d1(b) + 2.0 * rho.d3(a, b, b) * rho.d1(a);
            const double t22 = rho.d2(a, a) * rho.d2(b, b) + 2.0 * rho.d2(a, b) * rho.d2(a, b);
            const double t211 = rho.d2(a, a) * rho.d1(b) * rho.d1(b) + rho.d2(b, b) * rho.d1(a) * rho.d1(a) +
                                4.0 * rho.d2(a, b) * rho.d1(a) * rho.d1(b);
            const double t1111 = rho.d1(a) * rho.d1(a) * rho.d1(b) * rho.d1(b);
            acc += p4 / r - t3 * r2i - t22 * r2i + 2.0 * t211 * r3i - 6.0 * t1111 * r4i;
        }
    }
    return acc;
}

}  // namespace hfa
