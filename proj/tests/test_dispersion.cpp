#include <doctest.h>

#include <cmath>
#include <random>

#include "latwave/dispersion.hpp"

using namespace latwave;

TEST_CASE("lambda_of_x basic values") {
    CHECK(lambda_of_x({1.0, 0.0}, {1.0, 0.0}) == cplx{-1.0, 0.0});
    CHECK(lambda_of_x({-1.0, 0.0}, {1.0, 0.0}) == cplx{-5.0, 0.0});
    CHECK(lambda_of_x({0.5, 0.0}, {0.5, 0.0}) == cplx{-1.25, 0.0});
    CHECK_THROWS_AS(lambda_of_x({0.0, 0.0}, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("y_of_x picks the inside branch") {
    // Lambda = -5 at x = -1, omega = 1: smaller-modulus root of y^2 - 5y + 1.
    const BranchRoot y = y_of_x({-1.0, 0.0}, {1.0, 0.0});
    CHECK(!y.degenerate);
    CHECK(std::abs(y.value - cplx{0.20871215252208009, 0.0}) < 1e-14);

    // Lambda = -2 branch point: double root y = 1, flagged.
    // x + 1/x = 1 at omega = 1 puts Lambda exactly at -2.
    const cplx x_branch{0.5, std::sqrt(3.0) / 2.0};
    const BranchRoot yb = y_of_x(x_branch, {1.0, 0.0});
    CHECK(yb.degenerate);
    CHECK(std::abs(yb.value - cplx{1.0, 0.0}) < 1e-12);

    // Lambda = -1 at x = 1, omega = 1: on-circle tie broken by the eps probe.
    const BranchRoot yc = y_of_x({1.0, 0.0}, {1.0, 0.0});
    CHECK(!yc.degenerate);
    CHECK(std::abs(yc.value - cplx{0.5, std::sqrt(3.0) / 2.0}) < 1e-12);
}

TEST_CASE("branch consistency: product 1 and sum -Lambda") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rad(0.6, 1.6), ang(0.0, 2.0 * pi);
    for (int trial = 0; trial < 200; ++trial) {
        const cplx x = std::polar(rad(rng), ang(rng));
        const LatticeFrequency f{1.3, 0.0};
        const BranchRoot y = y_of_x(x, f);
        if (y.degenerate) continue;
        const cplx other = 1.0 / y.value;
        CHECK(std::abs(y.value * other - 1.0) < 1e-12);
        CHECK(std::abs(y.value + other + lambda_of_x(x, f.effective())) < 1e-11);
        CHECK(std::abs(y.value) < 1.0 + 1e-9);
    }
}

TEST_CASE("sine and cosine functions") {
    auto [s0, c0] = sine_cosine({0.3, 0.7}, 0);
    CHECK(s0 == cplx{0.0, 0.0});
    CHECK(c0 == cplx{2.0, 0.0});
    auto [si, ci] = sine_cosine({0.0, 1.0}, 2);
    CHECK(std::abs(si) < 1e-15);
    CHECK(std::abs(ci - cplx{-2.0, 0.0}) < 1e-15);
    auto [s2, c2] = sine_cosine({2.0, 0.0}, 3);
    CHECK(std::abs(s2 - cplx{7.875, 0.0}) < 1e-14);
    CHECK(std::abs(c2 - cplx{8.125, 0.0}) < 1e-14);
    CHECK_THROWS_AS(sine_cosine({0.0, 0.0}, 1), std::domain_error);
}

TEST_CASE("Chebyshev polynomial values") {
    CHECK(chebyshev_V(0, {0.7, 0.0}) == cplx{1.0, 0.0});
    CHECK(chebyshev_V(-1, {0.7, 0.0}) == cplx{0.0, 0.0});
    CHECK(std::abs(chebyshev_V(2, {1.0, 0.0}) - 3.0) < 1e-15);
    CHECK(std::abs(chebyshev_T(3, {0.5, 0.0}) - (-1.0)) < 1e-15);
}

TEST_CASE("Chebyshev identity s(n) = s(1) V_{n-1}(z)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> rad(0.5, 2.0), ang(0.0, 2.0 * pi);
    for (int trial = 0; trial < 60; ++trial) {
        const cplx y = std::polar(rad(rng), ang(rng));
        const cplx z = 0.5 * (y + 1.0 / y);
        const cplx s1 = y - 1.0 / y;
        for (int n = 1; n <= 40; ++n) {
            const cplx sn = sine_cosine(y, n).first;
            const double scale = std::max(1.0, std::abs(sn));
            CHECK(std::abs(sn - s1 * chebyshev_V(n - 1, z)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("Chebyshev derivative matches finite differences") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> zr(-0.95, 0.95);
    for (int trial = 0; trial < 30; ++trial) {
        const cplx z{zr(rng), 0.1 * zr(rng)};
        const double h = 1e-6;
        for (int n : {1, 4, 9, 17}) {
            const cplx fd = (chebyshev_V(n, z + h) - chebyshev_V(n, z - h)) / (2.0 * h);
            CHECK(std::abs(chebyshev_V_derivative(n, z) - fd) <
                  1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("x_pair_from_z: evanescent pair against the quadratic oracle") {
    // z = -1, omega = 0.5 gives gamma = -5.75; roots of x^2 - 5.75 x + 1.
    const ReciprocalPair pr = x_pair_from_z({-1.0, 0.0}, {0.5, 0.0});
    CHECK(!pr.degenerate);
    CHECK(std::abs(pr.x_in - cplx{0.17951766839402192, 0.0}) < 1e-13);
    CHECK(std::abs(pr.x_out - cplx{5.570482331605978, 0.0}) < 1e-12);
    CHECK(std::abs(pr.x_in * pr.x_out - 1.0) < 1e-12);
    CHECK(std::abs(pr.x_in + pr.x_out - 5.75) < 1e-12);
}

TEST_CASE("x_pair_from_z: propagating pair split by the eps probe") {
    // z = 1, omega = 0.5: gamma = -1.75, both roots on the unit circle.
    const ReciprocalPair pr = x_pair_from_z({1.0, 0.0}, {0.5, 0.0});
    CHECK(!pr.degenerate);
    CHECK(std::abs(std::abs(pr.x_in) - 1.0) < 1e-12);
    CHECK(std::abs(pr.x_in * pr.x_out - 1.0) < 1e-12);
    // The limiting-absorption member decays to the right: positive arg.
    CHECK(std::arg(pr.x_in) > 0.0);
    CHECK(std::abs(std::real(pr.x_in) - 0.875) < 1e-12);
}

TEST_CASE("x_pair_from_z: confluent pair flagged") {
    // gamma = -2 at 2z = 2 - omega^2: double root x = 1.
    const double om = 0.5;
    const ReciprocalPair pr = x_pair_from_z({(2.0 - om * om) / 2.0, 0.0}, {om, 0.0});
    CHECK(pr.degenerate);
    CHECK(pr.x_in == cplx{1.0, 0.0});
}
