#include "latwave/geometry.hpp"

#include <cmath>
#include <string>

#include "latwave/modes.hpp"

namespace latwave {

void WaveguideGeometry::validate() const {
    if (n1 < 0 || n2 < 0)
        throw ConfigError("geometry: screen extents n1, n2 must be non-negative");
    if (gap_below() < 2)
        throw ConfigError("geometry: gap below the screen must satisfy N1 - n1 >= 2");
    if (gap_above() < 2)
        throw ConfigError("geometry: gap above the screen must satisfy N2 - n2 >= 2");
}

void validate_frequency(const LatticeFrequency& f) {
    if (f.eps < 0.0) throw ConfigError("frequency: eps must be non-negative");
    constexpr double tol = 1e-9;
    if (std::abs(f.omega) <= tol || std::abs(f.omega - 2.0) <= tol ||
        std::abs(f.omega - omega_band_top) <= tol)
        throw DegenerateError("frequency: omega at a degenerate value of {0, 2, 2*sqrt(2)}");
    if (f.omega < 0.0 || f.omega > omega_band_top)
        throw ConfigError("frequency: omega must lie in (0, 2*sqrt(2))");
}

void validate_frequency(const LatticeFrequency& f, const WaveguideGeometry& g) {
    validate_frequency(f);
    for (int j = 1; j < g.N(); ++j) {
        if (std::abs(f.omega - mode_cutoff(j, g.N())) <= 1e-9)
            throw DegenerateError("frequency: omega coincides with the cut-off of mode " +
                                  std::to_string(j));
    }
}

}  // namespace latwave
