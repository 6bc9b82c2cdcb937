#pragma once

#include <utility>

#include "latwave/geometry.hpp"
#include "latwave/types.hpp"

namespace latwave {

/// Symbol of the transversal difference operator: Lambda(x) = Omega^2 - 4 + x + 1/x.
cplx lambda_of_x(cplx x, cplx omega_eff);

/// Chebyshev variable z = (y + 1/y)/2 = -(Omega^2 - 4 + x + 1/x)/2.
inline cplx z_of_x(cplx x, cplx omega_eff) { return -0.5 * lambda_of_x(x, omega_eff); }

struct BranchRoot {
    cplx value;
    bool degenerate = false;  ///< double root y = +-1 (Lambda = -+2)
};

/// The |y| <= 1 root of y^2 + Lambda(x) y + 1 = 0. When both roots sit on the
/// unit circle (eps = 0, propagating regime) the tie is broken by re-solving
/// with a small positive imaginary frequency and keeping that classification.
BranchRoot y_of_x(cplx x, const LatticeFrequency& f);

/// (y^n - y^-n, y^n + y^-n). Throws std::domain_error on y == 0.
std::pair<cplx, cplx> sine_cosine(cplx y, int n);

/// Chebyshev polynomial of the second kind, n >= -1 (V_{-1} = 0, V_0 = 1).
cplx chebyshev_V(int n, cplx z);
/// Chebyshev polynomial of the first kind, n >= 0.
cplx chebyshev_T(int n, cplx z);
/// d/dz V_n(z), n >= -1.
cplx chebyshev_V_derivative(int n, cplx z);

/// Reciprocal root pair of x^2 + gamma x + 1 = 0 with gamma = 2z + Omega^2 - 4:
/// one member inside the unit circle, one outside, product exactly 1.
struct ReciprocalPair {
    cplx z;
    cplx x_in;
    cplx x_out;
    bool degenerate = false;  ///< confluent pair (gamma = +-2, x_in = x_out = -+1)
};

/// Maps a Chebyshev-plane root z to its reciprocal x pair. On-circle pairs
/// (|gamma| < 2 real) are classified inside/outside by the eps probe.
ReciprocalPair x_pair_from_z(cplx z, const LatticeFrequency& f);

/// Imaginary part used by the probe that classifies on-circle roots.
inline constexpr double branch_probe_eps = 1e-8;

}  // namespace latwave
