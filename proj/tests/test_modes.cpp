#include <doctest.h>

#include <cmath>
#include <random>

#include "latwave/modes.hpp"

using namespace latwave;

namespace {
const WaveguideGeometry kDuct29{0, 9, 10, 19};  // N = 29, gaps of 10, screen length 10
}

TEST_CASE("cut-off frequencies") {
    CHECK(std::abs(mode_cutoff(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(mode_cutoff(1, 29) - 0.10827781717083516) < 1e-14);
    CHECK(std::abs(mode_cutoff(1, 29) - std::sqrt(2.0 - 2.0 * std::cos(pi / 29))) == 0.0);
}

TEST_CASE("mode construction and dispersion residual") {
    const LatticeFrequency f{1.5, 0.0};
    CHECK_THROWS_AS(mode(0, kDuct29, f), std::out_of_range);
    CHECK_THROWS_AS(mode(29, kDuct29, f), std::out_of_range);
    for (int j = 1; j < kDuct29.N(); ++j) {
        const WaveguideMode md = mode(j, kDuct29, f);
        const cplx resid = f.omega * f.omega - 4.0 + md.x_factor + 1.0 / md.x_factor +
                           2.0 * std::cos(md.theta);
        CHECK(std::abs(resid) <= 1e-12);
        CHECK(md.propagating == (f.omega > md.cutoff));  // omega < 2 here
    }
}

TEST_CASE("mode 1 at omega 1.5: on-circle at eps 0, decaying under absorption") {
    const WaveguideMode md0 = mode(1, kDuct29, {1.5, 0.0});
    CHECK(md0.propagating);
    CHECK(std::abs(std::abs(md0.x_factor) - 1.0) < 1e-12);
    CHECK(std::arg(md0.x_factor) > 0.0);  // Im K_1 > 0 under the probe
    const WaveguideMode mde = mode(1, kDuct29, {1.5, 1e-8});
    CHECK(std::abs(mde.x_factor) < 1.0);
}

TEST_CASE("modes leave the band through the upper edge above omega = 2") {
    // Mode 1 of the 29-row duct stops propagating at sqrt(4 + cutoff^2) ~ 2.003.
    const double upper = std::sqrt(4.0 + std::pow(mode_cutoff(1, 29), 2));
    CHECK(mode(1, kDuct29, {upper - 1e-3, 0.0}).propagating);
    CHECK(!mode(1, kDuct29, {upper + 1e-3, 0.0}).propagating);
    CHECK(mode(28, kDuct29, {2.5, 0.0}).propagating);
}

TEST_CASE("wall values of the mode profile vanish exactly") {
    for (int q = 1; q < kDuct29.N(); ++q) {
        CHECK(mode_sine(q, 0, kDuct29.N()) == cplx{0.0, 0.0});
        CHECK(mode_sine(q, kDuct29.N(), kDuct29.N()) == cplx{0.0, 0.0});
    }
}

TEST_CASE("incident field: walls and transverse profile") {
    const LatticeFrequency f{0.5, 0.0};
    const WaveguideGeometry g{0, 9, 15, 13};  // 28-row duct, asymmetric gaps
    const FieldWindow w = duct_window(g, -5, 5);
    const ComplexField u = incident_field(1, g, f, w);
    for (int m = -5; m <= 5; ++m) {
        CHECK(u.at(m, -g.N1) == cplx{0.0, 0.0});
        CHECK(u.at(m, g.N2) == cplx{0.0, 0.0});
    }
    for (int n = -g.N1; n <= g.N2; ++n)  // m = 0 column is the bare profile
        CHECK(u.at(0, n) == mode_sine(1, n + g.N1, g.N()));
    CHECK_THROWS_AS(incident_field(27, g, {0.05, 0.0}, w), DegenerateError);
}

TEST_CASE("mode orthogonality by brute force for all small ducts") {
    for (int N = 2; N <= 12; ++N) {
        const WaveguideGeometry g{0, 0, N / 2, N - N / 2};
        for (int j = 1; j < N; ++j) {
            const std::vector<cplx> sj = mode_profile(j, g);
            for (int k = 1; k < N; ++k) {
                const cplx ip = mode_inner_product(sj, k, g);
                if (j == k) {
                    CHECK(std::abs(std::imag(ip)) < 1e-12);
                    CHECK(std::real(ip) > 0.0);
                    CHECK(std::abs(ip - mode_norm(j, g)) < 1e-10);
                } else {
                    CHECK(std::abs(ip) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("computed mode norm is 2N, not 2(N+1)") {
    for (int N : {2, 5, 12, 29}) {
        const WaveguideGeometry g{0, 0, N / 2, N - N / 2};
        for (int j = 1; j < N; ++j) CHECK(std::abs(mode_norm(j, g) - 2.0 * N) < 1e-9);
    }
}

TEST_CASE("helmholtz residual: exact mode versus noise") {
    const LatticeFrequency f{1.5, 0.0};
    const FieldWindow w = duct_window(kDuct29, -6, 6);
    const ComplexField u = incident_field(1, kDuct29, f, w);
    CHECK(helmholtz_residual(u, kDuct29, f) <= 1e-12);

    ComplexField noise(w);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int m = w.m_min; m <= w.m_max; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n) noise.at(m, n) = {d(rng), d(rng)};
    CHECK(helmholtz_residual(noise, kDuct29, f) > 0.1);
}

TEST_CASE("geometry and frequency validation") {
    CHECK_NOTHROW(kDuct29.validate());
    CHECK_THROWS_AS((WaveguideGeometry{0, 9, 10, 10}.validate()), ConfigError);  // gap above 1
    CHECK_THROWS_AS((WaveguideGeometry{-1, 9, 10, 19}.validate()), ConfigError);
    CHECK_THROWS_AS(validate_frequency({2.0, 0.0}), DegenerateError);
    CHECK_THROWS_AS(validate_frequency({0.0, 0.0}), DegenerateError);
    CHECK_THROWS_AS(validate_frequency({2.0 * std::numbers::sqrt2, 0.0}), DegenerateError);
    CHECK_THROWS_AS(validate_frequency({3.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate_frequency({1.5, -1.0}), ConfigError);
    CHECK_THROWS_AS(validate_frequency({mode_cutoff(3, 29), 0.0}, kDuct29), DegenerateError);
    CHECK_NOTHROW(validate_frequency({1.5, 0.0}, kDuct29));
}

TEST_CASE("normalized geometry shifts the screen to row zero") {
    const WaveguideGeometry g{2, 7, 12, 17};
    const WaveguideGeometry n = g.normalized();
    CHECK(n.n1 == 0);
    CHECK(n.screen_len() == g.screen_len());
    CHECK(n.gap_below() == g.gap_below());
    CHECK(n.gap_above() == g.gap_above());
    CHECK(n.N() == g.N());
    CHECK(g.row_shift() == 2);
}
