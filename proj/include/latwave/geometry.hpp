#pragma once

#include "latwave/types.hpp"

namespace latwave {

/// Duct geometry: lattice rows n in [-N1, N2], Dirichlet walls on the boundary
/// rows, and a one-column Dirichlet screen at m = 0 covering rows [-n1, n2].
struct WaveguideGeometry {
    int n1 = 0;  ///< screen extent below the reference row (>= 0)
    int n2 = 0;  ///< screen extent above the reference row (>= 0)
    int N1 = 0;  ///< wall offset below
    int N2 = 0;  ///< wall offset above

    int N() const { return N1 + N2; }
    int gap_below() const { return N1 - n1; }       // l1
    int gap_above() const { return N2 - n2; }       // l2
    int screen_len() const { return n1 + n2 + 1; }  // l0
    bool symmetric() const { return gap_below() == gap_above(); }

    /// Shifted copy with the screen starting at row 0 (n1 == 0). Row n of the
    /// original maps to row n + row_shift() of the normalized geometry.
    WaveguideGeometry normalized() const {
        return WaveguideGeometry{0, n1 + n2, N1 - n1, N2 + n1};
    }
    int row_shift() const { return n1; }

    /// Throws ConfigError naming the violated rule.
    void validate() const;
};

/// Real lattice frequency plus the limiting-absorption imaginary part.
struct LatticeFrequency {
    double omega = 1.0;
    double eps = 0.0;

    cplx effective() const { return {omega, eps}; }
    LatticeFrequency with_eps(double e) const { return {omega, e}; }
};

/// Rejects omega outside (0, 2*sqrt(2)), the degenerate values {0, 2, 2*sqrt(2)},
/// and negative eps. Throws DegenerateError for the degenerate frequencies,
/// ConfigError otherwise.
void validate_frequency(const LatticeFrequency& f);

/// Additionally rejects frequencies at an exact mode cut-off of the geometry.
void validate_frequency(const LatticeFrequency& f, const WaveguideGeometry& g);

}  // namespace latwave
