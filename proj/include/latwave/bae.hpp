#pragma once

#include <memory>
#include <span>
#include <vector>

#include "latwave/lattice_green.hpp"
#include "latwave/modes.hpp"

namespace latwave {

/// Boundary-system solution: the scattered field sampled on the column next
/// to the screen plus the two corner values just past the screen tips. Works
/// for any geometry (no symmetry assumption) and any propagating incident
/// mode.
///
/// Solve order: factor (I - G_N) once, reuse it for the incident product and
/// both tip columns, close the 2x2 corner system, then back-substitute.
class BaeSolution {
public:
    static BaeSolution solve(const WaveguideGeometry& g, const LatticeFrequency& f, int p,
                             QuadratureOptions opt = {});

    cplx corner_below() const { return corner_below_; }  ///< u_sc(0, -n1-1)
    cplx corner_above() const { return corner_above_; }  ///< u_sc(0, n2+1)
    /// u_sc(1, n) over the screen rows n = -n1 .. n2.
    std::span<const cplx> screen_column() const { return u_; }

    /// Scattered field at one node via the Green's-function boundary sum.
    cplx scattered_at(int m, int n) const;

    /// Scattered field over a window (prefetches the Green cache per row).
    ComplexField scattered_field(const FieldWindow& w) const;

    const TailoredGreen& green() const { return *green_; }
    const WaveguideGeometry& geometry() const { return g_; }
    const LatticeFrequency& frequency() const { return f_; }
    int incident_mode() const { return p_; }

private:
    BaeSolution() = default;

    WaveguideGeometry g_;
    LatticeFrequency f_;
    int p_ = 1;
    std::shared_ptr<TailoredGreen> green_;
    std::vector<cplx> u_;       // u_sc(1, n) on screen rows
    std::vector<cplx> weight_;  // boundary weights of the field representation
    cplx corner_below_, corner_above_;
};

}  // namespace latwave
