#include "latwave/lattice_green.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latwave {

TailoredGreen::TailoredGreen(const WaveguideGeometry& g, const LatticeFrequency& f,
                             QuadratureOptions opt)
    : g_(g), f_(f), opt_(opt) {
    modes_.reserve(g_.N() - 1);
    for (int j = 1; j < g_.N(); ++j) {
        ReciprocalPair pr = x_pair_from_z(std::cos(j * pi / g_.N()), f_);
        if (pr.degenerate)
            throw DegenerateError("Green's function: mode " + std::to_string(j) +
                                  " at its band edge");
        modes_.push_back(pr);
    }
}

cplx TailoredGreen::spectral(cplx x, int n, int n0, int m0) const {
    if (n < -g_.N1 || n > g_.N2 || n0 < -g_.N1 || n0 > g_.N2)
        throw std::out_of_range("TailoredGreen::spectral: rows outside the duct");
    const int a = std::min(n, n0), b = std::max(n, n0);
    if (a == -g_.N1 || b == g_.N2) return {0.0, 0.0};  // wall rows vanish identically
    const cplx z = z_of_x(x, f_.effective());
    // Denominator in the x-plane pair-product form: the z-plane recurrence
    // loses accuracy where the z(x) map flattens at a band edge.
    const cplx val = -chebyshev_V(a + g_.N1 - 1, z) * chebyshev_V(g_.N2 - b - 1, z) /
                     denominator(x);
    return m0 == 0 ? val : val * ipow(x, -m0);
}

cplx TailoredGreen::denominator(cplx x) const {
    // V_{N-1}(z(x)) = (-1)^{N-1} x^{-(N-1)} prod_j (x - x_j^in)(x - x_j^out).
    cplx prod{1.0, 0.0};
    for (const auto& pr : modes_) prod *= (x - pr.x_in) * (x - pr.x_out);
    const double sign = g_.N() % 2 == 0 ? -1.0 : 1.0;
    return sign * prod * ipow(x, -(g_.N() - 1));
}

std::vector<ContourPole> TailoredGreen::mode_poles(int n, int n0) const {
    const int a = std::min(n, n0), b = std::max(n, n0);
    std::vector<ContourPole> poles;
    poles.reserve(2 * modes_.size());
    const cplx om = f_.effective();
    const double sign = g_.N() % 2 == 0 ? -1.0 : 1.0;
    for (size_t j = 0; j < modes_.size(); ++j) {
        // Residue of the spectral form at a simple root of the denominator,
        // with the derivative taken as the deflated pair product.
        auto residue_at = [&](cplx x, bool inner) {
            cplx deflated{1.0, 0.0};
            for (size_t i = 0; i < modes_.size(); ++i) {
                if (!(i == j && inner)) deflated *= x - modes_[i].x_in;
                if (!(i == j && !inner)) deflated *= x - modes_[i].x_out;
            }
            const cplx dV = sign * deflated * ipow(x, -(g_.N() - 1));
            const cplx z = z_of_x(x, om);
            return -chebyshev_V(a + g_.N1 - 1, z) * chebyshev_V(g_.N2 - b - 1, z) / dV;
        };
        poles.push_back({modes_[j].x_in, residue_at(modes_[j].x_in, true), true});
        poles.push_back({modes_[j].x_out, residue_at(modes_[j].x_out, false), false});
    }
    return poles;
}

std::vector<cplx> TailoredGreen::transform_batch(int dm_max, int n, int n0,
                                                 bool residue_path) const {
    const int a = std::min(n, n0), b = std::max(n, n0);
    if (a == -g_.N1 || b == g_.N2) return std::vector<cplx>(dm_max + 1, cplx{0.0, 0.0});
    const auto poles = mode_poles(n, n0);
    if (residue_path) {
        // The spectral form vanishes at x = 0 for ordered rows, so the m = 0
        // entry is a plain inside-residue sum as well.
        return inside_residue_sum(cplx{0.0, 0.0}, poles, 0, dm_max);
    }
    return inverse_unit_circle([&](cplx x) { return spectral(x, n, n0, 0); }, poles, 0, dm_max,
                               opt_);
}

void TailoredGreen::prefetch(int dm_max, int n, int n0) const {
    const int a = std::min(n, n0), b = std::max(n, n0);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        bool all = true;
        for (int dm = 0; dm <= dm_max; ++dm)
            if (!cache_.count({dm, a, b})) {
                all = false;
                break;
            }
        if (all) return;
    }
    const auto vals = transform_batch(dm_max, n, n0, false);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (int dm = 0; dm <= dm_max; ++dm) cache_[{dm, a, b}] = vals[dm];
}

cplx TailoredGreen::value(int m, int n, int m0, int n0) const {
    const int dm = std::abs(m - m0);
    const int a = std::min(n, n0), b = std::max(n, n0);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find({dm, a, b});
        if (it != cache_.end()) return it->second;
    }
    const auto vals = transform_batch(dm, n, n0, false);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (int k = 0; k <= dm; ++k) cache_[{k, a, b}] = vals[k];
    return vals[dm];
}

cplx TailoredGreen::value_residue(int m, int n, int m0, int n0) const {
    const int dm = std::abs(m - m0);
    return transform_batch(dm, n, n0, true)[dm];
}

}  // namespace latwave
