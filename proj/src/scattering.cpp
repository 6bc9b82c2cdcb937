#include "latwave/scattering.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latwave {

double group_velocity(int q, const WaveguideGeometry& g, const LatticeFrequency& f) {
    const WaveguideMode md = mode(q, g, f);
    if (!md.propagating)
        throw DegenerateError("group_velocity: mode " + std::to_string(q) + " is evanescent");
    const double K = std::arg(md.x_factor);
    return 2.0 * std::abs(std::sin(K)) / f.omega;
}

namespace {

ScatteringCoefficients finalize(int p, const WaveguideGeometry& g, const LatticeFrequency& f,
                                const std::vector<std::pair<int, std::pair<cplx, cplx>>>& rt) {
    ScatteringCoefficients out;
    out.p = p;
    const double vp = group_velocity(p, g, f);
    double sum = 0.0;
    for (const auto& [q, coeffs] : rt) {
        ScatteringCoefficients::Entry e;
        e.q = q;
        e.R = coeffs.first;
        e.T = coeffs.second;
        e.group_velocity = group_velocity(q, g, f);
        const double wf = std::sqrt(e.group_velocity / vp);
        e.weighted_R = wf * std::abs(e.R);
        e.weighted_T = wf * std::abs(e.T);
        sum += e.weighted_R * e.weighted_R + e.weighted_T * e.weighted_T;
        out.modes.push_back(e);
    }
    out.energy_residual = std::abs(sum - 1.0);
    return out;
}

}  // namespace

ScatteringCoefficients coefficients_analytic(const WienerHopfSolution& sol) {
    const WaveguideGeometry& g = sol.normalized_geometry();
    const LatticeFrequency& f = sol.frequency();
    const int p = sol.incident_mode();
    const auto amps = sol.modal_amplitudes();
    std::vector<std::pair<int, std::pair<cplx, cplx>>> rt;
    for (int q = 1; q < g.N(); ++q) {
        if (!mode(q, g, f).propagating) continue;
        cplx mq{0.0, 0.0};
        if (auto it = amps.find(q); it != amps.end()) mq = it->second.value;
        const cplx tq = q == p ? 1.0 + mq : mq;
        rt.push_back({q, {mq, tq}});
    }
    return finalize(p, g, f, rt);
}

ScatteringCoefficients coefficients_numeric_with_norm(const ComplexField& scattered, int p,
                                                      int m_r, const WaveguideGeometry& g,
                                                      const LatticeFrequency& f,
                                                      double norm_override) {
    const FieldWindow& w = scattered.window();
    if (m_r < 1 || !w.contains(m_r, 0) || !w.contains(-m_r, 0))
        throw std::invalid_argument("coefficients_numeric: columns +-m_r outside the window");

    std::vector<cplx> tot = scattered.column(m_r);
    const std::vector<cplx> sp = mode_profile(p, g);
    const cplx xp_mr = ipow(mode(p, g, f).x_factor, m_r);
    for (int k = 0; k <= g.N(); ++k) tot[k] += xp_mr * sp[k];
    const std::vector<cplx> refl = scattered.column(-m_r);

    std::vector<std::pair<int, std::pair<cplx, cplx>>> rt;
    for (int q = 1; q < g.N(); ++q) {
        const WaveguideMode md = mode(q, g, f);
        if (!md.propagating) continue;
        const double norm = norm_override > 0.0 ? norm_override : mode_norm(q, g);
        const cplx depropagate = ipow(md.x_factor, -m_r);
        const cplx tq = mode_inner_product(tot, q, g) / norm * depropagate;
        const cplx rq = mode_inner_product(refl, q, g) / norm * depropagate;
        rt.push_back({q, {rq, tq}});
    }
    return finalize(p, g, f, rt);
}

ScatteringCoefficients coefficients_numeric(const ComplexField& scattered, int p, int m_r,
                                            const WaveguideGeometry& g,
                                            const LatticeFrequency& f) {
    return coefficients_numeric_with_norm(scattered, p, m_r, g, f, -1.0);
}

double energy_flux(const ComplexField& total, int m, const LatticeFrequency& f) {
    const FieldWindow& w = total.window();
    if (!w.contains(m, w.n_min) || !w.contains(m + 1, w.n_min))
        throw std::invalid_argument("energy_flux: columns m, m+1 outside the window");
    cplx acc{0.0, 0.0};
    for (int n = w.n_min; n <= w.n_max; ++n)
        acc += (total.at(m + 1, n) - total.at(m, n)) * std::conj(total.at(m, n));
    // Sign fixed so a right-propagating mode carries positive flux.
    return 0.5 * f.omega * std::imag(acc);
}

double unit_mode_flux(int q, const WaveguideGeometry& g, const LatticeFrequency& f) {
    const double K = std::arg(mode(q, g, f).x_factor);
    return 0.5 * f.omega * std::sin(K) * mode_norm(q, g);
}

}  // namespace latwave
