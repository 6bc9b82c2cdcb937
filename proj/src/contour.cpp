#include "latwave/contour.hpp"

#include <algorithm>
#include <cmath>

namespace latwave {

namespace {

constexpr double near_band_lo = 0.5;
constexpr double near_band_hi = 2.0;

// Closed-form value of (1/2 pi i) \oint c/(x - p) x^{m-1} dx, m >= 0, for a
// pole approaching the unit circle from the recorded side.
cplx pole_term(const ContourPole& p, int m) {
    if (m == 0) return p.inside ? cplx{0.0, 0.0} : -p.residue / p.location;
    return p.inside ? p.residue * ipow(p.location, m - 1) : cplx{0.0, 0.0};
}

// Grid phase keeping every node a safe angular distance from the subtracted
// poles, so the 0/0 in the smooth remainder stays well conditioned.
double pick_offset(int nodes, const std::vector<ContourPole>& near) {
    constexpr double candidates[] = {0.5, 0.25, 0.38196601125};
    double best = candidates[0], best_gap = -1.0;
    for (double off : candidates) {
        double gap = 1.0;
        for (const auto& p : near) {
            const double frac_raw = std::arg(p.location) / (2.0 * pi) * nodes - off;
            const double frac = frac_raw - std::floor(frac_raw);
            gap = std::min(gap, std::min(frac, 1.0 - frac));
        }
        if (gap > best_gap) {
            best_gap = gap;
            best = off;
        }
        if (gap > 0.2) break;
    }
    return best;
}

}  // namespace

std::vector<cplx> inverse_unit_circle(const std::function<cplx(cplx)>& f,
                                      std::span<const ContourPole> poles, int m_lo, int m_hi,
                                      const QuadratureOptions& opt, int* nodes_used) {
    if (m_lo < 0 || m_hi < m_lo)
        throw std::invalid_argument("inverse_unit_circle: need 0 <= m_lo <= m_hi");

    std::vector<ContourPole> near;
    for (const auto& p : poles) {
        const double r = std::abs(p.location);
        if (r > near_band_lo && r < near_band_hi) near.push_back(p);
    }
    // Nearly-confluent pairs (a mode close to its band edge) carry huge
    // opposite residues; subtracting them term by term would cancel
    // catastrophically at every node, so such pairs are combined into a
    // single rational term with precomputed numerator coefficients.
    struct Cluster {
        cplx p1, p2;     // p2 unused when single
        cplx a, b;       // (a x - b) / ((x-p1)(x-p2)), or a/(x-p1) when single
        bool paired;
    };
    std::vector<Cluster> clusters;
    std::vector<bool> used(near.size(), false);
    for (size_t i = 0; i < near.size(); ++i) {
        if (used[i]) continue;
        size_t partner = near.size();
        for (size_t j = i + 1; j < near.size(); ++j)
            if (!used[j] && std::abs(near[i].location - near[j].location) < 0.1) {
                partner = j;
                break;
            }
        if (partner < near.size()) {
            used[partner] = true;
            const auto& pi = near[i];
            const auto& pj = near[partner];
            clusters.push_back({pi.location, pj.location, pi.residue + pj.residue,
                                pi.residue * pj.location + pj.residue * pi.location, true});
        } else {
            clusters.push_back({near[i].location, {}, near[i].residue, {}, false});
        }
    }
    auto smooth = [&](cplx x) {
        cplx v = f(x);
        for (const auto& c : clusters) {
            if (c.paired)
                v -= (c.a * x - c.b) / ((x - c.p1) * (x - c.p2));
            else
                v -= c.a / (x - c.p1);
        }
        return v;
    };

    const int count = m_hi - m_lo + 1;
    std::vector<cplx> prev;
    double diff = 0.0;
    int nodes = opt.initial_nodes;
    for (int pass = 0; pass <= opt.max_doublings; ++pass, nodes *= 2) {
        const double off = pick_offset(nodes, near);
        std::vector<cplx> sum(count, cplx{0.0, 0.0});
        for (int t = 0; t < nodes; ++t) {
            const double phi = 2.0 * pi * (t + off) / nodes;
            const cplx x{std::cos(phi), std::sin(phi)};
            const cplx v = smooth(x);
            cplx xm = ipow(x, m_lo);
            for (int k = 0; k < count; ++k, xm *= x) sum[k] += v * xm;
        }
        for (auto& s : sum) s /= static_cast<double>(nodes);
        if (!prev.empty()) {
            diff = 0.0;
            for (int k = 0; k < count; ++k) diff = std::max(diff, std::abs(sum[k] - prev[k]));
            if (diff < opt.tol) {
                if (nodes_used) *nodes_used = nodes;
                for (int k = 0; k < count; ++k)
                    for (const auto& p : near) sum[k] += pole_term(p, m_lo + k);
                return sum;
            }
        }
        prev = std::move(sum);
    }
    throw ConvergenceError("contour quadrature did not converge", diff);
}

std::vector<cplx> inside_residue_sum(cplx f_at_zero, std::span<const ContourPole> poles, int m_lo,
                                     int m_hi) {
    if (m_lo < 0 || m_hi < m_lo)
        throw std::invalid_argument("inside_residue_sum: need 0 <= m_lo <= m_hi");
    std::vector<cplx> out(m_hi - m_lo + 1, cplx{0.0, 0.0});
    for (int m = m_lo; m <= m_hi; ++m) {
        cplx acc = m == 0 ? f_at_zero : cplx{0.0, 0.0};
        for (const auto& p : poles) {
            if (!p.inside) continue;
            acc += m == 0 ? p.residue / p.location : p.residue * ipow(p.location, m - 1);
        }
        out[m - m_lo] = acc;
    }
    return out;
}

}  // namespace latwave
