#include <doctest.h>

#include <cmath>
#include <random>

#include "latwave/bae.hpp"
#include "latwave/lattice_green.hpp"

using namespace latwave;

namespace {
const WaveguideGeometry kFig4d{0, 9, 10, 19};   // symmetric, 29 rows
const WaveguideGeometry kFig4a{0, 9, 15, 13};   // asymmetric, 28 rows
}

TEST_CASE("spectral Green's function: difference equation and walls") {
    const LatticeFrequency f{1.5, 0.0};
    const TailoredGreen gr(kFig4d, f);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> rad(0.8, 1.25), ang(0.0, 2.0 * pi);
    std::uniform_int_distribution<int> row(-kFig4d.N1 + 1, kFig4d.N2 - 1);
    for (int t = 0; t < 40; ++t) {
        const cplx x = std::polar(rad(rng), ang(rng));
        const int n0 = row(rng);
        const cplx lam = lambda_of_x(x, f.effective());
        const int m0 = 2;
        const cplx lhs = lam * gr.spectral(x, n0, n0, m0) + gr.spectral(x, n0 - 1, n0, m0) +
                         gr.spectral(x, n0 + 1, n0, m0);
        const cplx rhs = ipow(x, -m0);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        // Off-source rows satisfy the homogeneous equation.
        const int n = n0 > 0 ? n0 - 3 : n0 + 3;
        if (n > -kFig4d.N1 && n < kFig4d.N2 && std::abs(n - n0) > 1) {
            const cplx hom = lam * gr.spectral(x, n, n0, m0) + gr.spectral(x, n - 1, n0, m0) +
                             gr.spectral(x, n + 1, n0, m0);
            CHECK(std::abs(hom) <= 1e-9);
        }
        CHECK(gr.spectral(x, -kFig4d.N1, n0, m0) == cplx{0.0, 0.0});
        CHECK(gr.spectral(x, kFig4d.N2, n0, m0) == cplx{0.0, 0.0});
        // Both branch formulas coincide when rows swap.
        const int n1 = row(rng);
        CHECK(gr.spectral(x, n0, n1, 0) == gr.spectral(x, n1, n0, 0));
    }
}

TEST_CASE("physical Green's function: defining equation, reciprocity, oracle") {
    const LatticeFrequency f{1.5, 1e-8};
    const TailoredGreen gr(kFig4d, f);
    const cplx om2 = f.effective() * f.effective();
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> mrand(-4, 4), nrand(-kFig4d.N1 + 1, kFig4d.N2 - 1);
    for (int t = 0; t < 10; ++t) {
        const int m0 = mrand(rng), n0 = nrand(rng);
        const int m = mrand(rng), n = nrand(rng);
        const cplx lap = gr.value(m + 1, n, m0, n0) + gr.value(m - 1, n, m0, n0) +
                         gr.value(m, n + 1, m0, n0) + gr.value(m, n - 1, m0, n0) +
                         (om2 - 4.0) * gr.value(m, n, m0, n0);
        const double delta = (m == m0 && n == n0) ? 1.0 : 0.0;
        CHECK(std::abs(lap - delta) <= 1e-10);

        CHECK(std::abs(gr.value(m, n, m0, n0) - gr.value(m0, n0, m, n)) <= 1e-10);
        CHECK(std::abs(gr.value(m, n, m0, n0) - gr.value_residue(m, n, m0, n0)) <= 1e-10);
    }
    // Wall rows vanish identically.
    CHECK(gr.value(3, -kFig4d.N1, 0, 2) == cplx{0.0, 0.0});
    CHECK(gr.value(3, kFig4d.N2, 0, 2) == cplx{0.0, 0.0});
}

TEST_CASE("discrete Green's identity on a finite window") {
    // sum L[f] w == sum L[w] f for compactly supported lattice functions.
    const LatticeFrequency f{1.23, 0.0};
    const WaveguideGeometry g{0, 3, 5, 8};
    const FieldWindow w = duct_window(g, -8, 8);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexField a(w), b(w);
    for (int m = -5; m <= 5; ++m)
        for (int n = -g.N1 + 1; n <= g.N2 - 1; ++n) {
            a.at(m, n) = {d(rng), d(rng)};
            b.at(m, n) = {d(rng), d(rng)};
        }
    auto L = [&](const ComplexField& u, int m, int n) {
        return u.at(m + 1, n) + u.at(m - 1, n) + u.at(m, n + 1) + u.at(m, n - 1) +
               (f.omega * f.omega - 4.0) * u.at(m, n);
    };
    cplx lhs{0.0, 0.0}, rhs{0.0, 0.0};
    double scale = 0.0;
    for (int m = -7; m <= 7; ++m)
        for (int n = -g.N1 + 1; n <= g.N2 - 1; ++n) {
            lhs += L(a, m, n) * b.at(m, n);
            rhs += L(b, m, n) * a.at(m, n);
            scale += std::abs(L(a, m, n) * b.at(m, n));
        }
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, scale));
}

TEST_CASE("boundary solve: symmetric configuration has equal corner values") {
    const WaveguideGeometry g{2, 2, 6, 6};  // n1 = n2 = 2, equal gaps of 4
    const LatticeFrequency f{1.0, 1e-8};
    const BaeSolution sol = BaeSolution::solve(g, f, 1);
    CHECK(std::abs(sol.corner_below() - sol.corner_above()) <= 1e-10);
}

TEST_CASE("boundary solve: screen data reproduced on both reference configs") {
    for (const WaveguideGeometry& g : {kFig4d, kFig4a}) {
        const double om = g.symmetric() ? 1.5 : 0.5;
        const LatticeFrequency f{om, 1e-8};
        const BaeSolution sol = BaeSolution::solve(g, f, 1);
        // The field representation must return -u_in on the screen column.
        double worst = 0.0;
        for (int n = -g.n1; n <= g.n2; ++n) {
            const cplx u_sc = sol.scattered_at(0, n);
            const cplx u_in = incident_value(1, 0, n, g, f);
            worst = std::max(worst, std::abs(u_sc + u_in));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("boundary solve: field invariants on the asymmetric configuration") {
    const LatticeFrequency f{0.5, 1e-8};
    const BaeSolution sol = BaeSolution::solve(kFig4a, f, 1);
    const FieldWindow w = duct_window(kFig4a, -8, 8);
    const ComplexField sc = sol.scattered_field(w);

    // Scattered field is symmetric in m for any geometry.
    double sym = 0.0;
    for (int m = 1; m <= 8; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n)
            sym = std::max(sym, std::abs(sc.at(m, n) - sc.at(-m, n)));
    CHECK(sym <= 1e-9);

    const ComplexField inc = incident_field(1, kFig4a, f, w);
    ComplexField tot = sc;
    for (int m = w.m_min; m <= w.m_max; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n) tot.at(m, n) += inc.at(m, n);

    double screen = 0.0;
    for (int n = -kFig4a.n1; n <= kFig4a.n2; ++n)
        screen = std::max(screen, std::abs(tot.at(0, n)));
    CHECK(screen <= 1e-9);
    for (int m = w.m_min; m <= w.m_max; ++m) {
        CHECK(tot.at(m, -kFig4a.N1) == cplx{0.0, 0.0});
        CHECK(tot.at(m, kFig4a.N2) == cplx{0.0, 0.0});
    }
    CHECK(helmholtz_residual(tot, kFig4a, f) <= 1e-9);
    CHECK(helmholtz_residual(sc, kFig4a, f) <= 1e-9);
}

TEST_CASE("boundary solve works for even incident modes") {
    const LatticeFrequency f{1.0, 1e-8};
    const BaeSolution sol = BaeSolution::solve(kFig4d, f, 2);
    double screen = 0.0;
    for (int n = -kFig4d.n1; n <= kFig4d.n2; ++n) {
        const cplx u_sc = sol.scattered_at(0, n);
        const cplx u_in = incident_value(2, 0, n, kFig4d, f);
        screen = std::max(screen, std::abs(u_sc + u_in));
    }
    CHECK(screen <= 1e-9);
}

TEST_CASE("below cut-off incidence is rejected") {
    CHECK_THROWS_AS(BaeSolution::solve(kFig4d, {0.05, 0.0}, 1), DegenerateError);
}
