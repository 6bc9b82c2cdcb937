#pragma once

#include <vector>

#include "latwave/modes.hpp"
#include "latwave/wiener_hopf.hpp"

namespace latwave {

/// Reflection/transmission data for the propagating modes at one frequency.
struct ScatteringCoefficients {
    struct Entry {
        int q = 0;
        cplx R, T;
        double group_velocity = 0.0;
        double weighted_R = 0.0;  ///< sqrt(|v_q|/|v_p|) |R_q|
        double weighted_T = 0.0;
    };
    int p = 1;
    std::vector<Entry> modes;      ///< ascending q, propagating modes only
    double energy_residual = 0.0;  ///< |sum(weighted_T^2 + weighted_R^2) - 1|
};

/// |v_q| = 2 sin K_q / Omega of a propagating mode. Throws DegenerateError
/// for evanescent modes.
double group_velocity(int q, const WaveguideGeometry& g, const LatticeFrequency& f);

/// Coefficients from the residue amplitudes of a solved pole-removal system:
/// R_q = M_q, T_p = 1 + M_p, T_q = M_q otherwise.
ScatteringCoefficients coefficients_analytic(const WienerHopfSolution& sol);

/// Coefficients by modal projection of a scattered-field window: transmitted
/// side read from the total field at column +m_r, reflected side from the
/// scattered field at column -m_r, both de-propagated by x_q^{m_r}.
ScatteringCoefficients coefficients_numeric(const ComplexField& scattered, int p, int m_r,
                                            const WaveguideGeometry& g,
                                            const LatticeFrequency& f);

/// Same projection, with an explicit norm override (norm consistency check).
ScatteringCoefficients coefficients_numeric_with_norm(const ComplexField& scattered, int p,
                                                      int m_r, const WaveguideGeometry& g,
                                                      const LatticeFrequency& f,
                                                      double norm_override);

/// Energy flux through the cut between columns m and m+1 of a total field,
/// positive for rightward transport.
double energy_flux(const ComplexField& total, int m, const LatticeFrequency& f);

/// Flux carried by a unit-amplitude propagating mode (closed form).
double unit_mode_flux(int q, const WaveguideGeometry& g, const LatticeFrequency& f);

}  // namespace latwave
