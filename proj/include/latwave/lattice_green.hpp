#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "latwave/contour.hpp"
#include "latwave/modes.hpp"

namespace latwave {

/// Lattice Green's function of the Dirichlet duct: solves
/// Delta G + Omega^2 G = delta_{m,m0} delta_{n,n0} with G = 0 on both walls.
///
/// The spectral form is a pure ratio of Chebyshev polynomials in z(x), so the
/// inverse-transform integrand is rational in x with poles only at the duct
/// mode pairs. Values depend on |m - m0| and on the unordered row pair, which
/// is what the memo cache is keyed on.
class TailoredGreen {
public:
    TailoredGreen(const WaveguideGeometry& g, const LatticeFrequency& f,
                  QuadratureOptions opt = {});

    /// Spectral Green's function at transform variable x (source column m0).
    cplx spectral(cplx x, int n, int n0, int m0 = 0) const;

    /// G(m, n; m0, n0) by contour quadrature (cached).
    cplx value(int m, int n, int m0, int n0) const;

    /// Residue-sum evaluation over the inside mode poles (oracle path).
    cplx value_residue(int m, int n, int m0, int n0) const;

    /// Fills the cache for all |m - m0| in [0, dm_max] at one (n, n0) pair
    /// with a single set of contour samples.
    void prefetch(int dm_max, int n, int n0) const;

    const WaveguideGeometry& geometry() const { return g_; }
    const LatticeFrequency& frequency() const { return f_; }

private:
    cplx denominator(cplx x) const;  ///< V_{N-1}(z(x)) as an x-plane pair product
    std::vector<ContourPole> mode_poles(int n, int n0) const;
    std::vector<cplx> transform_batch(int dm_max, int n, int n0, bool residue_path) const;

    WaveguideGeometry g_;
    LatticeFrequency f_;
    QuadratureOptions opt_;
    std::vector<ReciprocalPair> modes_;  // x pairs of the N-1 duct modes
    mutable std::map<std::tuple<int, int, int>, cplx> cache_;
    mutable std::mutex cache_mutex_;
};

}  // namespace latwave
