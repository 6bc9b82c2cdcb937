#include "latwave/modes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latwave {

double mode_cutoff(int j, int N) {
    const double theta = j * pi / N;
    return std::sqrt(2.0 - 2.0 * std::cos(theta));
}

WaveguideMode mode(int j, const WaveguideGeometry& g, const LatticeFrequency& f) {
    const int N = g.N();
    if (j < 1 || j > N - 1)
        throw std::out_of_range("mode: index must satisfy 1 <= j <= N-1");
    WaveguideMode md;
    md.j = j;
    md.theta = j * pi / N;
    md.cutoff = mode_cutoff(j, N);
    const double z = std::cos(md.theta);
    md.x_factor = x_pair_from_z(z, f).x_in;
    // Propagating iff the longitudinal factor sits on the unit circle at
    // eps = 0, i.e. |2 cos(theta) + omega^2 - 4| < 2. For omega <= 2 this is
    // exactly omega > cutoff; above omega = 2 low modes leave the pass band
    // again through their upper edge sqrt(4 + cutoff^2).
    const double gamma0 = 2.0 * z + f.omega * f.omega - 4.0;
    md.propagating = std::abs(gamma0) < 2.0;
    return md;
}

cplx mode_sine(int q, int k, int N) {
    const long long prod = static_cast<long long>(q) * k;
    if (prod % N == 0) {
        // sin of an exact multiple of pi; keep the zero exact so wall rows
        // vanish identically.
        return {0.0, 0.0};
    }
    return {0.0, 2.0 * std::sin(static_cast<double>(prod % (2LL * N)) * pi / N)};
}

std::vector<cplx> mode_profile(int q, const WaveguideGeometry& g) {
    std::vector<cplx> s(g.N() + 1);
    for (int n = -g.N1; n <= g.N2; ++n) s[n + g.N1] = mode_sine(q, n + g.N1, g.N());
    return s;
}

FieldWindow duct_window(const WaveguideGeometry& g, int m_min, int m_max) {
    return FieldWindow{m_min, m_max, -g.N1, g.N2};
}

cplx incident_value(int p, int m, int n, const WaveguideGeometry& g, const LatticeFrequency& f) {
    const WaveguideMode md = mode(p, g, f);
    return ipow(md.x_factor, m) * mode_sine(p, n + g.N1, g.N());
}

ComplexField incident_field(int p, const WaveguideGeometry& g, const LatticeFrequency& f,
                            const FieldWindow& window) {
    const WaveguideMode md = mode(p, g, f);
    if (!md.propagating)
        throw DegenerateError("incident mode " + std::to_string(p) + " is below cut-off");
    const std::vector<cplx> s = mode_profile(p, g);
    ComplexField u(window);
    for (int m = window.m_min; m <= window.m_max; ++m) {
        const cplx xm = ipow(md.x_factor, m);
        for (int n = window.n_min; n <= window.n_max; ++n) u.at(m, n) = xm * s[n + g.N1];
    }
    return u;
}

cplx mode_inner_product(std::span<const cplx> column, int q, const WaveguideGeometry& g) {
    if (static_cast<int>(column.size()) != g.N() + 1)
        throw std::invalid_argument("mode_inner_product: column must span the full duct height");
    cplx acc{0.0, 0.0};
    for (int k = 0; k <= g.N(); ++k) acc += column[k] * std::conj(mode_sine(q, k, g.N()));
    return acc;
}

double mode_norm(int q, const WaveguideGeometry& g) {
    double acc = 0.0;
    for (int k = 0; k <= g.N(); ++k) acc += std::norm(mode_sine(q, k, g.N()));
    return acc;
}

double helmholtz_residual(const ComplexField& u, const WaveguideGeometry& g,
                          const LatticeFrequency& f) {
    const FieldWindow& w = u.window();
    if (w.cols() < 3 || w.rows() < 3)
        throw std::invalid_argument("helmholtz_residual: window must be at least 3x3");
    const cplx om2 = f.effective() * f.effective();
    double worst = 0.0;
    for (int m = w.m_min + 1; m < w.m_max; ++m) {
        for (int n = w.n_min + 1; n < w.n_max; ++n) {
            if (m == 0 && n >= -g.n1 && n <= g.n2) continue;  // screen node
            const cplx lap = u.at(m + 1, n) + u.at(m - 1, n) + u.at(m, n + 1) + u.at(m, n - 1) -
                             4.0 * u.at(m, n);
            worst = std::max(worst, std::abs(lap + om2 * u.at(m, n)));
        }
    }
    return worst;
}

}  // namespace latwave
