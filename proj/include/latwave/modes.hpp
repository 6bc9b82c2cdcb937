#pragma once

#include <span>
#include <vector>

#include "latwave/dispersion.hpp"
#include "latwave/geometry.hpp"
#include "latwave/types.hpp"

namespace latwave {

/// Duct mode j: transverse profile s_j(n + N1) = y_j^{n+N1} - y_j^{-(n+N1)}
/// with y_j = e^{i theta_j}, theta_j = j pi / N, and longitudinal factor x_j.
struct WaveguideMode {
    int j = 0;
    double theta = 0.0;
    double cutoff = 0.0;
    cplx x_factor;            ///< |x| <= 1 root of the dispersion quadratic
    bool propagating = false;

    cplx y() const { return {std::cos(theta), std::sin(theta)}; }
};

/// Cut-off frequency of mode j on an N-row duct: sqrt(2 - 2 cos(j pi / N)).
double mode_cutoff(int j, int N);

/// Builds mode j (1 <= j <= N-1). Throws std::out_of_range otherwise.
WaveguideMode mode(int j, const WaveguideGeometry& g, const LatticeFrequency& f);

/// s_q(k) = 2i sin(k q pi / N); exactly zero whenever k q is a multiple of N,
/// so wall values vanish identically.
cplx mode_sine(int q, int k, int N);

/// Transverse profile s_q(n + N1) over rows n = -N1 .. N2.
std::vector<cplx> mode_profile(int q, const WaveguideGeometry& g);

// ---------------------------------------------------------------------------
// Field container
// ---------------------------------------------------------------------------

struct FieldWindow {
    int m_min = 0, m_max = 0;
    int n_min = 0, n_max = 0;

    int cols() const { return m_max - m_min + 1; }
    int rows() const { return n_max - n_min + 1; }
    bool contains(int m, int n) const {
        return m >= m_min && m <= m_max && n >= n_min && n <= n_max;
    }
};

/// Complex-valued field on a rectangular (m, n) window, stored row-major by m.
class ComplexField {
public:
    explicit ComplexField(FieldWindow w)
        : w_(w), v_(static_cast<size_t>(w.cols()) * w.rows()) {}

    const FieldWindow& window() const { return w_; }

    cplx& at(int m, int n) { return v_[index(m, n)]; }
    const cplx& at(int m, int n) const { return v_[index(m, n)]; }

    /// All rows at a fixed column m, ordered n_min .. n_max.
    std::vector<cplx> column(int m) const {
        std::vector<cplx> c(w_.rows());
        for (int n = w_.n_min; n <= w_.n_max; ++n) c[n - w_.n_min] = at(m, n);
        return c;
    }

private:
    size_t index(int m, int n) const {
        if (!w_.contains(m, n)) throw std::out_of_range("ComplexField: node outside window");
        return static_cast<size_t>(m - w_.m_min) * w_.rows() + (n - w_.n_min);
    }

    FieldWindow w_;
    std::vector<cplx> v_;
};

/// Window spanning the full duct height for columns m in [m_min, m_max].
FieldWindow duct_window(const WaveguideGeometry& g, int m_min, int m_max);

/// Incident duct mode p of unit amplitude: u_in(m, n) = x_p^m s_p(n + N1).
/// Throws DegenerateError("below cut-off") if mode p does not propagate.
ComplexField incident_field(int p, const WaveguideGeometry& g, const LatticeFrequency& f,
                            const FieldWindow& window);

/// Value of the incident mode at a single node.
cplx incident_value(int p, int m, int n, const WaveguideGeometry& g, const LatticeFrequency& f);

/// Discrete inner product <f, s_q> = sum_n f(n) conj(s_q(n + N1)) over the
/// full duct column (f ordered n = -N1 .. N2).
cplx mode_inner_product(std::span<const cplx> column, int q, const WaveguideGeometry& g);

/// Computed squared norm <s_q, s_q>.
double mode_norm(int q, const WaveguideGeometry& g);

/// Max |Delta u + Omega^2 u| over interior nodes of the window that are not on
/// the screen column segment. Requires a window of at least 3x3.
double helmholtz_residual(const ComplexField& u, const WaveguideGeometry& g,
                          const LatticeFrequency& f);

}  // namespace latwave
