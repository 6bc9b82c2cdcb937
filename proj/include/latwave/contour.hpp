#pragma once

#include <functional>
#include <span>
#include <vector>

#include "latwave/types.hpp"

namespace latwave {

struct QuadratureOptions {
    int initial_nodes = 1 << 10;
    double tol = 1e-11;
    int max_doublings = 10;  // node cap initial_nodes * 2^max_doublings
};

/// Simple pole of a transform together with its residue. `inside` records the
/// side of the unit circle the pole approaches under limiting absorption; for
/// propagating pairs at eps = 0 the modulus alone cannot decide this.
struct ContourPole {
    cplx location;
    cplx residue;
    bool inside = true;
};

/// Inverse transforms u(m) = (1/2 pi i) \oint f(x) x^{m-1} dx over the unit
/// circle, for all m in [m_lo, m_hi] with m_lo >= 0.
///
/// Poles of f close to the contour (0.5 < |x| < 2) are removed analytically
/// and their contribution restored in closed form; the remainder is handled
/// by the doubling trapezoid rule, which then converges geometrically. All
/// poles of f inside that band must be listed in `poles`. Throws
/// ConvergenceError if the doubling cap is reached. `nodes_used`, when
/// non-null, receives the node count of the accepted pass.
std::vector<cplx> inverse_unit_circle(const std::function<cplx(cplx)>& f,
                                      std::span<const ContourPole> poles, int m_lo, int m_hi,
                                      const QuadratureOptions& opt, int* nodes_used = nullptr);

/// Exact inverse transform of a rational f with *all* poles listed:
/// u(m) = sum over inside poles of c pi^{m-1} for m >= 1, and
/// u(0) = f(0) + sum over inside poles of c / pi.
std::vector<cplx> inside_residue_sum(cplx f_at_zero, std::span<const ContourPole> poles, int m_lo,
                                     int m_hi);

}  // namespace latwave
