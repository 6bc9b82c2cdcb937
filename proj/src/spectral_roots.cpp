#include "latwave/spectral_roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace latwave {

std::vector<double> roots_of_V(int J) {
    if (J < 1) throw std::invalid_argument("roots_of_V: J >= 1 required");
    std::vector<double> z(J);
    for (int j = 1; j <= J; ++j) z[j - 1] = std::cos(pi * j / (J + 1));
    return z;
}

OneMinusVRoots roots_of_one_minus_V(int J) {
    if (J < 1) throw std::invalid_argument("roots_of_one_minus_V: J >= 1 required");
    OneMinusVRoots r;
    for (int j = 1; 2 * j < J; ++j) r.family1.push_back(std::cos(2.0 * pi * j / J));
    for (int j = 0; 2 * j + 1 < J + 2; ++j) r.family2.push_back(std::cos(pi * (2 * j + 1) / (J + 2)));
    return r;
}

namespace {

// One-for-one removal of coincident pole/zero z-roots. Returns the surviving
// subsets, preserving order.
struct CancelResult {
    std::vector<double> zeros, poles;
};
CancelResult cancel_common_roots(std::vector<double> zeros, const std::vector<double>& poles) {
    CancelResult out;
    std::vector<bool> zero_used(zeros.size(), false);
    for (double p : poles) {
        bool matched = false;
        for (size_t i = 0; i < zeros.size(); ++i) {
            if (!zero_used[i] && std::abs(zeros[i] - p) <= root_merge_tol) {
                zero_used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) out.poles.push_back(p);
    }
    for (size_t i = 0; i < zeros.size(); ++i)
        if (!zero_used[i]) out.zeros.push_back(zeros[i]);
    return out;
}

std::vector<ReciprocalPair> pairs_from_z(const std::vector<double>& zs, const LatticeFrequency& f,
                                         const char* what) {
    std::vector<ReciprocalPair> out;
    out.reserve(zs.size());
    for (double z : zs) {
        ReciprocalPair p = x_pair_from_z(z, f);
        if (p.degenerate) {
            std::ostringstream msg;
            msg << what << ": confluent reciprocal pair at z = " << z;
            throw DegenerateError(msg.str());
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace

cplx RationalKernelData::deflated_Q(cplx at, int skip_j, bool skip_out) const {
    cplx q{1.0, 0.0};
    for (int i = 0; i < J(); ++i) {
        if (!(i == skip_j && !skip_out)) q *= at - poles[i].x_in;
        if (!(i == skip_j && skip_out)) q *= at - poles[i].x_out;
    }
    return q;
}

cplx RationalKernelData::eval_rational(cplx x) const {
    cplx p{1.0, 0.0}, q{1.0, 0.0};
    for (const auto& mu : zeros) p *= (x - mu.x_in) * (x - mu.x_out);
    for (const auto& la : poles) q *= (x - la.x_in) * (x - la.x_out);
    const cplx v = x * p / q;
    return kind == KernelKind::K0 ? -v : v;
}

cplx RationalKernelData::eval_direct(cplx x, cplx omega_eff) const {
    const cplx z = z_of_x(x, omega_eff);
    const cplx num = chebyshev_V(order_num, z);
    const cplx den = chebyshev_V(order_den, z);
    return kind == KernelKind::K0 ? num / den : num / (1.0 - den);
}

RationalKernelData kernel_data(KernelKind kind, const WaveguideGeometry& g,
                               const LatticeFrequency& f) {
    if (!g.symmetric())
        throw std::invalid_argument("kernel_data: symmetric geometry required");
    const int l = g.gap_below();
    const int l0 = g.screen_len();
    if (l < 2 || l0 < 2)
        throw std::invalid_argument("kernel_data: gap >= 2 and screen length >= 2 required");

    RationalKernelData k;
    k.kind = kind;
    std::vector<double> zero_z, pole_z;
    if (kind == KernelKind::K0) {
        k.order_num = l - 2;
        k.order_den = l - 1;
        if (l > 2) zero_z = roots_of_V(l - 2);
        pole_z = roots_of_V(l - 1);
    } else {
        k.order_num = l0 - 2;
        k.order_den = l0 - 1;
        std::vector<double> zeros_all;
        if (l0 > 2) zeros_all = roots_of_V(l0 - 2);
        const OneMinusVRoots omv = roots_of_one_minus_V(l0 - 1);
        std::vector<double> poles_all = omv.family1;
        poles_all.insert(poles_all.end(), omv.family2.begin(), omv.family2.end());
        const CancelResult survivors = cancel_common_roots(std::move(zeros_all), poles_all);
        zero_z = survivors.zeros;
        pole_z = survivors.poles;
    }
    k.zeros = pairs_from_z(zero_z, f, kind == KernelKind::K0 ? "K0 zeros" : "K1 zeros");
    k.poles = pairs_from_z(pole_z, f, kind == KernelKind::K0 ? "K0 poles" : "K1 poles");
    if (static_cast<int>(k.zeros.size()) != k.J() - 1)
        throw DegenerateError("kernel_data: zero/pole count mismatch after cancellation");

    // Residue weights from the deflated denominator product.
    const double sign = kind == KernelKind::K0 ? -1.0 : 1.0;
    k.b_in.resize(k.J());
    k.b_out.resize(k.J());
    for (int j = 0; j < k.J(); ++j) {
        cplx p_in{1.0, 0.0}, p_out{1.0, 0.0};
        for (const auto& mu : k.zeros) {
            p_in *= (k.poles[j].x_in - mu.x_in) * (k.poles[j].x_in - mu.x_out);
            p_out *= (k.poles[j].x_out - mu.x_in) * (k.poles[j].x_out - mu.x_out);
        }
        k.b_in[j] = sign * p_in / k.deflated_Q(k.poles[j].x_in, j, false);
        k.b_out[j] = sign * p_out / k.deflated_Q(k.poles[j].x_out, j, true);
    }
    return k;
}

cplx SpectralCatalogue::w_derivative(cplx root, int skip_index) const {
    cplx prod{1.0, 0.0};
    for (int i = 0; i < static_cast<int>(w_roots.size()); ++i)
        if (i != skip_index) prod *= root - w_roots[i];
    return prod;
}

SpectralCatalogue build_catalogue(const WaveguideGeometry& g, const LatticeFrequency& f) {
    SpectralCatalogue cat;
    cat.k0 = kernel_data(KernelKind::K0, g, f);
    cat.k1 = kernel_data(KernelKind::K1, g, f);
    const int l = g.gap_below();
    const int l0 = g.screen_len();

    // Kernel poles cancelled by the other kernel's zeros contribute completion
    // equations instead of collocation points.
    auto matches_zero = [](double z, const RationalKernelData& other) {
        for (const auto& mu : other.zeros)
            if (std::abs(std::real(mu.z) - z) <= root_merge_tol) return true;
        return false;
    };
    for (int j = 0; j < cat.k0.J(); ++j)
        if (matches_zero(std::real(cat.k0.poles[j].z), cat.k1)) cat.cancelled_k0.push_back(j);
    for (int j = 0; j < cat.k1.J(); ++j)
        if (matches_zero(std::real(cat.k1.poles[j].z), cat.k0)) cat.cancelled_k1.push_back(j);

    // Denominator roots: the odd-mode family, minus the copies cancelled by
    // the even family and by the cancelled kernel poles.
    struct Tagged {
        double z;
        int q;
    };
    std::vector<Tagged> wz;
    const int Ntot = 2 * l + l0 - 1;
    for (int q = 1; q < Ntot; q += 2) wz.push_back({std::cos(pi * q / Ntot), q});
    std::vector<double> z3;
    for (int j = 1; 2 * j < l0 - 1; ++j) z3.push_back(std::cos(2.0 * pi * j / (l0 - 1)));

    auto remove_one = [&wz](double z) {
        for (size_t i = 0; i < wz.size(); ++i) {
            if (std::abs(wz[i].z - z) <= root_merge_tol) {
                wz.erase(wz.begin() + i);
                return true;
            }
        }
        return false;
    };
    for (double z : z3) remove_one(z);
    for (int j : cat.cancelled_k0) remove_one(std::real(cat.k0.poles[j].z));
    for (int j : cat.cancelled_k1) remove_one(std::real(cat.k1.poles[j].z));

    for (const auto& t : wz) {
        ReciprocalPair p = x_pair_from_z(t.z, f);
        if (p.degenerate)
            throw DegenerateError("denominator root confluent at z = " + std::to_string(t.z));
        cat.nu.push_back(p);
        cat.nu_mode.push_back(t.q);
    }

    // Roots of the monic W polynomial: the genuine pairs plus the cancelled
    // kernel pole pairs.
    for (const auto& p : cat.nu) {
        cat.w_roots.push_back(p.x_in);
        cat.w_roots.push_back(p.x_out);
    }
    for (int j : cat.cancelled_k0) {
        cat.w_roots.push_back(cat.k0.poles[j].x_in);
        cat.w_roots.push_back(cat.k0.poles[j].x_out);
    }
    for (int j : cat.cancelled_k1) {
        cat.w_roots.push_back(cat.k1.poles[j].x_in);
        cat.w_roots.push_back(cat.k1.poles[j].x_out);
    }
    const int expected = cat.k0.J() + cat.k1.J();
    if (static_cast<int>(cat.w_roots.size()) != 2 * expected)
        throw DegenerateError("denominator root bookkeeping mismatch: got " +
                              std::to_string(cat.w_roots.size() / 2) + " pairs, expected " +
                              std::to_string(expected));
    return cat;
}

std::vector<ReciprocalPair> denominator_roots(const WaveguideGeometry& g,
                                              const LatticeFrequency& f) {
    return build_catalogue(g, f).nu;
}

}  // namespace latwave
