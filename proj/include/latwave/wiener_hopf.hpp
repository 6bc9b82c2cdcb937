#pragma once

#include <map>
#include <span>
#include <vector>

#include "latwave/contour.hpp"
#include "latwave/modes.hpp"
#include "latwave/spectral_roots.hpp"

namespace latwave {

/// Amplitude of scattered duct mode q; evanescent entries are kept but flagged.
struct ModalAmplitude {
    cplx value;
    bool propagating = false;
};

/// Exact solution of the symmetric-screen scattering problem (equal gaps,
/// odd propagating incident mode) by additive pole removal.
///
/// The two coupled functional equations
///   U0+ = -U1+ K1 + sum_j w1_j F1_j + G1
///   U1+ =  U0+ K0 + sum_j w0_j F0_j + G0
/// close into a dense linear system for the unknown pole values w by
/// requiring the combined expression for U1+ to stay analytic outside the
/// unit circle: its numerator must vanish at every outside denominator root
/// nu+, with one self-consistency equation added for every kernel pole that
/// cancels against the other kernel's zeros.
class WienerHopfSolution {
public:
    static WienerHopfSolution solve(const WaveguideGeometry& g, const LatticeFrequency& f, int p);

    // --- solved data -------------------------------------------------------
    cplx u_star() const { return u_star_; }
    int system_size() const { return static_cast<int>(w1_.size() + w0_.size()); }
    int completion_count() const {
        return static_cast<int>(cat_.cancelled_k0.size() + cat_.cancelled_k1.size());
    }
    double condition_number() const { return cond_; }
    const SpectralCatalogue& catalogue() const { return cat_; }
    std::span<const cplx> w1_plus() const { return w1_; }
    std::span<const cplx> w0_plus() const { return w0_; }
    cplx f_p() const { return f_p_; }
    cplx f_star() const { return f_star_; }
    const WaveguideGeometry& normalized_geometry() const { return g_; }
    const LatticeFrequency& frequency() const { return f_; }
    int incident_mode() const { return p_; }
    cplx x_p() const { return xp_; }
    /// s_p(k) of the incident transverse profile.
    cplx sp(int k) const { return mode_sine(p_, k, g_.N()); }

    // --- kernels and split functions ---------------------------------------
    cplx K0(cplx x) const { return cat_.k0.eval_rational(x); }
    cplx K1(cplx x) const { return cat_.k1.eval_rational(x); }
    cplx Pi(cplx x) const;       ///< (x^2 - 1)/((x - x_p)(x - 1/x_p))
    cplx Upsilon(cplx x) const { return 1.0 + Pi(x); }
    cplx P(cplx x) const;        ///< removable at x_p; identically s_p(l) for odd p
    cplx C0(cplx x) const;       ///< inside-pole sum of K0
    cplx C1(cplx x) const;       ///< inside-pole sum of K1
    cplx F0_j(int j, cplx x) const;
    cplx F1_j(int j, cplx x) const;
    cplx G0(cplx x) const;
    cplx G1(cplx x) const;
    cplx K1_plus(cplx x) const { return C1(x); }
    cplx K1_minus(cplx x) const { return K1(x) - C1(x); }
    cplx PiK1_plus(cplx x) const;
    cplx PiK1_minus(cplx x) const { return Pi(x) * K1(x) - PiK1_plus(x); }
    cplx F_full(cplx x) const;
    cplx F_plus(cplx x) const;
    cplx F_minus(cplx x) const;

    // --- solved plus functions (guarded evaluators) -------------------------
    cplx U0_plus(cplx x) const;
    cplx U1_plus(cplx x) const;
    cplx U0_plus_infinity() const { return -sp(g_.gap_below()); }
    cplx U1_plus_infinity() const { return u_star_; }

    // --- row transforms (normalized rows: screen 0..l0-1, gap -l..-1) -------
    cplx psi_row(cplx x, int n) const;
    cplx phi_row(cplx x, int n) const;

    // --- physical space ------------------------------------------------------
    /// Scattered field by contour quadrature (window in physical rows).
    ComplexField scattered_field(const FieldWindow& w, const QuadratureOptions& opt) const;
    /// Scattered field by the exact inside-residue sums (oracle path).
    ComplexField scattered_field_residue(const FieldWindow& w) const;
    int quadrature_nodes_used() const { return nodes_used_; }

    /// Residue-based amplitudes M_q of the odd scattered modes.
    std::map<int, ModalAmplitude> modal_amplitudes() const;

    /// Residue of U1_plus at the inside member of catalogue pair i.
    cplx u1_residue_at_nu(int i) const;

    /// Transform pole left behind by a cancelled kernel pole: the completion
    /// equation removes the outside member's residue only, so the inside
    /// member still carries the content of one odd mode. For a cancelled
    /// gap-kernel pole the pole sits in U1_plus; for a cancelled screen-kernel
    /// pole it sits in U0_plus and enters the rows through the profile ratio.
    struct ResidualModePole {
        cplx x_in, x_out;
        int q = 0;       ///< odd duct-mode number
        cplx amplitude;  ///< modal amplitude M_q carried by the pair
    };
    std::span<const ResidualModePole> residual_mode_poles() const { return extra_poles_; }

private:
    WienerHopfSolution() = default;

    cplx N_numerator(cplx x) const;  ///< numerator of the combined U1+ expression
    cplx Q0(cplx x) const;
    cplx Q1(cplx x) const;
    cplx U1_plus_raw(cplx x) const;
    cplx U0_plus_raw(cplx x) const;
    cplx row_at_zero(int n) const;
    std::vector<ContourPole> row_poles(int n) const;
    cplx row_residue(int pair, bool inside_member, int n) const;

    WaveguideGeometry g_;  // normalized (n1 == 0)
    int shift_ = 0;
    LatticeFrequency f_;
    int p_ = 1;
    cplx xp_;
    SpectralCatalogue cat_;
    std::vector<cplx> w1_, w0_;
    cplx u_star_, f_p_, f_star_;
    std::vector<cplx> g1_coef_;  // s_p(l-1) Pi(lambda1_in) b1_in per K1 pole
    double cond_ = 0.0;
    mutable int nodes_used_ = 0;
    std::vector<cplx> guard_points_;  // kernel pole members and outside nu members
    std::vector<ResidualModePole> extra_poles_;
};

}  // namespace latwave
