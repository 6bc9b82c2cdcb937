#include "latwave/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace latwave {

cplx lambda_of_x(cplx x, cplx omega_eff) {
    if (x == cplx{0.0, 0.0}) throw std::domain_error("lambda_of_x: x must be nonzero");
    return omega_eff * omega_eff - 4.0 + x + 1.0 / x;
}

namespace {

// Both roots of t^2 + gamma t + 1 = 0, ordered (small, large) by modulus.
// The large root is formed without cancellation, the small one as its exact
// reciprocal, so the product is 1 to machine precision.
std::pair<cplx, cplx> palindromic_roots(cplx gamma) {
    const cplx disc = std::sqrt(gamma * gamma - 4.0);
    // Pick the sign that adds |gamma| and |disc| constructively.
    const cplx s = (std::real(std::conj(gamma) * disc) >= 0.0) ? disc : -disc;
    const cplx big = -0.5 * (gamma + s);
    if (big == cplx{0.0, 0.0}) return {1.0, 1.0};  // gamma = +-2 handled by caller
    return {1.0 / big, big};
}

bool moduli_tied(const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    return std::abs(ma - mb) <= 1e-10 * (ma + mb);
}

}  // namespace

BranchRoot y_of_x(cplx x, const LatticeFrequency& f) {
    const cplx lam = lambda_of_x(x, f.effective());
    if (std::abs(lam - 2.0) < 1e-14) return {cplx{-1.0, 0.0}, true};
    if (std::abs(lam + 2.0) < 1e-14) return {cplx{1.0, 0.0}, true};
    auto [small, big] = palindromic_roots(lam);
    if (!moduli_tied(small, big)) return {small, false};
    // On-circle tie: probe with a small positive imaginary frequency part.
    const cplx lam_probe = lambda_of_x(x, f.with_eps(f.eps + branch_probe_eps).effective());
    auto [ps, pb] = palindromic_roots(lam_probe);
    return {std::abs(small - ps) <= std::abs(big - ps) ? small : big, false};
}

std::pair<cplx, cplx> sine_cosine(cplx y, int n) {
    if (y == cplx{0.0, 0.0}) throw std::domain_error("sine_cosine: y must be nonzero");
    const cplx yp = ipow(y, n);
    const cplx ym = 1.0 / yp;
    return {yp - ym, yp + ym};
}

cplx chebyshev_V(int n, cplx z) {
    if (n < -1) throw std::domain_error("chebyshev_V: n >= -1 required");
    if (n == -1) return 0.0;
    cplx prev = 0.0, cur = 1.0;  // V_{-1}, V_0
    for (int k = 0; k < n; ++k) {
        const cplx next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx chebyshev_T(int n, cplx z) {
    if (n < 0) throw std::domain_error("chebyshev_T: n >= 0 required");
    if (n == 0) return 1.0;
    cplx prev = 1.0, cur = z;  // T_0, T_1
    for (int k = 1; k < n; ++k) {
        const cplx next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx chebyshev_V_derivative(int n, cplx z) {
    if (n < -1) throw std::domain_error("chebyshev_V_derivative: n >= -1 required");
    if (n <= 0) return 0.0;
    cplx v_prev = 0.0, v_cur = 1.0;
    cplx d_prev = 0.0, d_cur = 0.0;
    for (int k = 0; k < n; ++k) {
        const cplx v_next = 2.0 * z * v_cur - v_prev;
        const cplx d_next = 2.0 * v_cur + 2.0 * z * d_cur - d_prev;
        v_prev = v_cur;
        v_cur = v_next;
        d_prev = d_cur;
        d_cur = d_next;
    }
    return d_cur;
}

ReciprocalPair x_pair_from_z(cplx z, const LatticeFrequency& f) {
    const cplx omega_eff = f.effective();
    const cplx gamma = 2.0 * z + omega_eff * omega_eff - 4.0;
    ReciprocalPair pair;
    pair.z = z;
    if (std::abs(gamma - 2.0) < 1e-14) {
        pair.x_in = pair.x_out = -1.0;
        pair.degenerate = true;
        return pair;
    }
    if (std::abs(gamma + 2.0) < 1e-14) {
        pair.x_in = pair.x_out = 1.0;
        pair.degenerate = true;
        return pair;
    }
    auto [small, big] = palindromic_roots(gamma);
    if (moduli_tied(small, big)) {
        const cplx op = f.with_eps(f.eps + branch_probe_eps).effective();
        auto [ps, pb] = palindromic_roots(2.0 * z + op * op - 4.0);
        if (std::abs(big - ps) < std::abs(small - ps)) std::swap(small, big);
    }
    pair.x_in = small;
    pair.x_out = big;
    return pair;
}

}  // namespace latwave
