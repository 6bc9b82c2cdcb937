#pragma once

#include <vector>

#include "latwave/dispersion.hpp"
#include "latwave/geometry.hpp"

namespace latwave {

/// Roots of V_J(z) on (-1, 1): cos(pi j / (J+1)), j = 1..J, strictly decreasing.
std::vector<double> roots_of_V(int J);

/// Roots of 1 - V_J(z) on (-1, 1), split into the two closed-form families.
/// family1: cos(2 pi j / J), integer j in [1, J/2);
/// family2: cos(pi (2j+1) / (J+2)), integer j in [0, (J+1)/2).
/// Together (with multiplicity) they exhaust all J roots.
struct OneMinusVRoots {
    std::vector<double> family1;
    std::vector<double> family2;
};
OneMinusVRoots roots_of_one_minus_V(int J);

enum class KernelKind { K0, K1 };

/// Zero/pole catalogue of one scalar kernel, as reciprocal x pairs, plus the
/// simple-pole residue weights b of the matching partial-fraction expansion.
///
/// K0(x) = V_{l-2}(z(x)) / V_{l-1}(z(x))        = -x P(x)/Q(x)
/// K1(x) = V_{l0-2}(z(x)) / (1 - V_{l0-1}(z(x))) = +x P(x)/Q(x)
///
/// with monic P (zero pairs) and Q (pole pairs) after removal of the pole/zero
/// pairs that cancel between numerator and denominator.
struct RationalKernelData {
    KernelKind kind = KernelKind::K0;
    int order_num = 0;  ///< V order of the numerator (l-2 or l0-2)
    int order_den = 0;  ///< V order of the denominator (l-1 or l0-1)
    std::vector<ReciprocalPair> zeros;  ///< mu pairs
    std::vector<ReciprocalPair> poles;  ///< lambda pairs
    std::vector<cplx> b_in;             ///< b_{j,-}: residue weights at the inside poles
    std::vector<cplx> b_out;            ///< b_{j,+}: residue weights at the outside poles

    int J() const { return static_cast<int>(poles.size()); }

    /// Reconstructed rational form (-x P/Q for K0, +x P/Q for K1).
    cplx eval_rational(cplx x) const;
    /// Direct Chebyshev evaluation of the defining ratio.
    cplx eval_direct(cplx x, cplx omega_eff) const;
    /// Value of the deflated denominator Q(x)/(x - pole) at the given pole.
    cplx deflated_Q(cplx at, int skip_j, bool skip_out) const;
};

/// Builds the kernel catalogue for a symmetric geometry (l1 = l2 = l >= 2,
/// l0 >= 2). Throws DegenerateError naming the offending root when a pair is
/// confluent.
RationalKernelData kernel_data(KernelKind kind, const WaveguideGeometry& g,
                               const LatticeFrequency& f);

/// z-roots considered coincident (cancellation / dedup rule).
inline constexpr double root_merge_tol = 1e-10;

/// Full root bookkeeping shared by the pole-removal solver: both kernels, the
/// genuine poles nu of 1/(1 + K0 K1) tagged with their duct-mode number, and
/// the kernel poles that cancel against the other kernel's zeros (each of
/// those contributes one completion equation).
struct SpectralCatalogue {
    RationalKernelData k0, k1;
    std::vector<ReciprocalPair> nu;
    std::vector<int> nu_mode;        ///< odd duct-mode number per nu pair
    std::vector<int> cancelled_k0;   ///< indices into k0.poles
    std::vector<int> cancelled_k1;   ///< indices into k1.poles
    std::vector<cplx> w_roots;       ///< all roots of W = Q0 Q1 - x^2 P0 P1

    /// Derivative of the monic W at one of its roots (product over the others).
    cplx w_derivative(cplx root, int skip_index) const;
};

SpectralCatalogue build_catalogue(const WaveguideGeometry& g, const LatticeFrequency& f);

/// Genuine denominator pairs nu_j (the system collocation points).
std::vector<ReciprocalPair> denominator_roots(const WaveguideGeometry& g,
                                              const LatticeFrequency& f);

}  // namespace latwave
