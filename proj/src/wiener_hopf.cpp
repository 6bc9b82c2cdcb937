#include "latwave/wiener_hopf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace latwave {

namespace {

constexpr double guard_distance = 1e-6;

// Mean of an analytic function over a small circle equals its centre value;
// used as the limit form near removable singularities of the evaluators.
cplx cauchy_mean(const std::function<cplx(cplx)>& fn, cplx x, double rho) {
    constexpr int K = 16;
    cplx acc{0.0, 0.0};
    for (int k = 0; k < K; ++k) {
        const double phi = 2.0 * pi * k / K;
        acc += fn(x + rho * cplx{std::cos(phi), std::sin(phi)});
    }
    return acc / static_cast<double>(K);
}

double distance_to(const std::vector<cplx>& pts, cplx x) {
    double d = 1e300;
    for (const auto& p : pts) d = std::min(d, std::abs(x - p));
    return d;
}

}  // namespace

WienerHopfSolution WienerHopfSolution::solve(const WaveguideGeometry& g_in,
                                             const LatticeFrequency& f, int p) {
    g_in.validate();
    if (!g_in.symmetric())
        throw std::invalid_argument("pole-removal solver requires equal gaps (l1 == l2)");
    if (p % 2 == 0)
        throw std::invalid_argument("pole-removal solver supports odd incident modes only");
    validate_frequency(f);

    WienerHopfSolution s;
    s.g_ = g_in.normalized();
    s.shift_ = g_in.row_shift();
    s.f_ = f;
    s.p_ = p;
    const WaveguideMode mp = mode(p, s.g_, f);
    if (!mp.propagating)
        throw DegenerateError("incident mode " + std::to_string(p) + " is below cut-off");
    s.xp_ = mp.x_factor;
    s.cat_ = build_catalogue(s.g_, f);

    const int l = s.g_.gap_below();
    const int J1 = s.cat_.k1.J();
    const int J0 = s.cat_.k0.J();
    const int M = J0 + J1;

    s.f_star_ = cplx{0.0, 0.0};
    s.f_p_ = s.sp(s.g_.screen_len() - 1) / (s.sp(1) - s.sp(s.g_.screen_len()));
    s.g1_coef_.resize(J1);
    for (int j = 0; j < J1; ++j) {
        const cplx pi_l = s.Pi(s.cat_.k1.poles[j].x_in);
        s.f_star_ += s.cat_.k1.b_in[j];
        s.f_p_ += pi_l * s.cat_.k1.b_in[j];
        s.g1_coef_[j] = s.sp(l - 1) * pi_l * s.cat_.k1.b_in[j];
    }

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(M, M);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(M);
    int row = 0;
    for (size_t i = 0; i < s.cat_.nu.size(); ++i, ++row) {
        const cplx x = s.cat_.nu[i].x_out;
        const cplx k0 = s.K0(x);
        for (int j = 0; j < J1; ++j) A(row, j) = k0 * s.F1_j(j, x);
        for (int j = 0; j < J0; ++j) A(row, J1 + j) = s.F0_j(j, x);
        rhs(row) = -(s.G0(x) + k0 * s.G1(x));
    }
    for (int q : s.cat_.cancelled_k1) {
        const cplx x = s.cat_.k1.poles[q].x_out;
        A(row, q) = 1.0;
        for (int j = 0; j < J0; ++j) A(row, J1 + j) -= s.F0_j(j, x);
        rhs(row) = s.G0(x);
        ++row;
    }
    for (int q : s.cat_.cancelled_k0) {
        const cplx x = s.cat_.k0.poles[q].x_out;
        A(row, J1 + q) = 1.0;
        for (int j = 0; j < J1; ++j) A(row, j) -= s.F1_j(j, x);
        rhs(row) = s.G1(x);
        ++row;
    }
    if (row != M) throw DegenerateError("pole-removal system is not square");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    s.cond_ = sv(0) / sv(M - 1);
    if (!(s.cond_ < 1e14)) throw DegenerateError("degenerate configuration (singular system)");

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd w = lu.solve(rhs);
    if (s.cond_ > 1e10) w += lu.solve(rhs - A * w);

    s.w1_.assign(w.data(), w.data() + J1);
    s.w0_.assign(w.data() + J1, w.data() + M);

    s.u_star_ = cplx{0.0, 0.0};
    for (int j = 0; j < J0; ++j) {
        s.u_star_ += s.w0_[j] * (s.cat_.k0.b_in[j] - s.cat_.k0.b_out[j]);
        s.u_star_ += s.sp(l) * s.cat_.k0.b_in[j];
    }

    // Evaluator guards: points where the assembled expressions are removable.
    // Inside members of cancelled gap-kernel poles are genuine poles of
    // U1_plus and must stay unguarded.
    for (size_t j = 0; j < s.cat_.k0.poles.size(); ++j) {
        const bool cancelled = std::find(s.cat_.cancelled_k0.begin(), s.cat_.cancelled_k0.end(),
                                         static_cast<int>(j)) != s.cat_.cancelled_k0.end();
        if (!cancelled) s.guard_points_.push_back(s.cat_.k0.poles[j].x_in);
        s.guard_points_.push_back(s.cat_.k0.poles[j].x_out);
    }
    for (const auto& la : s.cat_.k1.poles) {
        s.guard_points_.push_back(la.x_in);
        s.guard_points_.push_back(la.x_out);
    }
    for (const auto& nu : s.cat_.nu) s.guard_points_.push_back(nu.x_out);

    // Residual mode content of the cancelled pairs. The mode number follows
    // from the pair's Chebyshev root.
    auto mode_of = [&s](double z) {
        const double zc = std::clamp(z, -1.0, 1.0);
        const int q = static_cast<int>(std::lround(std::acos(zc) * s.g_.N() / pi));
        if (q % 2 != 1 || std::abs(std::cos(q * pi / s.g_.N()) - zc) > 1e-9)
            throw DegenerateError("cancelled pole does not sit on an odd duct mode");
        return q;
    };
    for (size_t c = 0; c < s.cat_.cancelled_k0.size(); ++c) {
        // Pole of U1_plus at the inside member.
        const int q_idx = s.cat_.cancelled_k0[c];
        const cplx li = s.cat_.k0.poles[q_idx].x_in;
        cplx s1{0.0, 0.0};
        for (size_t j = 0; j < s.w1_.size(); ++j)
            s1 += s.w1_[j] * s.F1_j(static_cast<int>(j), li);
        const cplx res_n =
            s.cat_.k0.b_in[q_idx] * li * (s1 + s.G1(li) + s.w0_[q_idx] + s.sp(l));
        const cplx def_q0 = s.cat_.k0.deflated_Q(li, q_idx, false);
        const int instance = 2 * static_cast<int>(s.cat_.nu.size()) + 2 * static_cast<int>(c);
        const cplx r1 = res_n * def_q0 * s.Q1(li) / s.cat_.w_derivative(li, instance);
        const int q = mode_of(std::real(s.cat_.k0.poles[q_idx].z));
        const cplx amplitude = r1 / (li * mode_sine(q, l - 1, s.g_.N()));
        s.extra_poles_.push_back({li, s.cat_.k0.poles[q_idx].x_out, q, amplitude});
    }
    for (int q_idx : s.cat_.cancelled_k1) {
        // Pole of U0_plus at the inside member; the rows pick it up through
        // the transverse profile ratio, whose denominator root coincides with
        // the pair (which is also why s_q(l-1) vanishes here).
        const cplx li = s.cat_.k1.poles[q_idx].x_in;
        const cplx z = s.cat_.k1.poles[q_idx].z;
        const int q = mode_of(std::real(z));
        const cplx phi1 = s.U1_plus(li) + s.U1_plus(1.0 / li) - s.u_star_;
        const cplx dv = chebyshev_V_derivative(l - 2, z) * (-0.5) * (1.0 - 1.0 / (li * li));
        const cplx amplitude = phi1 / (li * mode_sine(q, 1, s.g_.N()) * dv);
        s.extra_poles_.push_back({li, s.cat_.k1.poles[q_idx].x_out, q, amplitude});
    }
    return s;
}

// ---------------------------------------------------------------------------
// Split functions
// ---------------------------------------------------------------------------

cplx WienerHopfSolution::Pi(cplx x) const {
    return (x * x - 1.0) / ((x - xp_) * (x - 1.0 / xp_));
}

cplx WienerHopfSolution::P(cplx x) const {
    const int l = g_.gap_below();
    if (std::abs(x - xp_) < guard_distance) return sp(l);
    const cplx k1p = sp(g_.screen_len() - 1) / (sp(1) - sp(g_.screen_len()));
    return (x * sp(l) + xp_ * sp(l - 1) * k1p) / (x - xp_);
}

cplx WienerHopfSolution::C0(cplx x) const {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < cat_.k0.J(); ++j) {
        const cplx la = cat_.k0.poles[j].x_in;
        acc += cat_.k0.b_in[j] * la / (x - la);
    }
    return acc;
}

cplx WienerHopfSolution::C1(cplx x) const {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < cat_.k1.J(); ++j) {
        const cplx la = cat_.k1.poles[j].x_in;
        acc += cat_.k1.b_in[j] * la / (x - la);
    }
    return acc;
}

cplx WienerHopfSolution::F0_j(int j, cplx x) const {
    const auto& pr = cat_.k0.poles[j];
    return cat_.k0.b_in[j] * x / (x - pr.x_in) - cat_.k0.b_out[j] * x / (x - pr.x_out);
}

cplx WienerHopfSolution::F1_j(int j, cplx x) const {
    const auto& pr = cat_.k1.poles[j];
    return cat_.k1.b_in[j] * pr.x_in / (x - pr.x_in) +
           cat_.k1.b_out[j] * pr.x_out / (x - pr.x_out);
}

cplx WienerHopfSolution::G0(cplx x) const {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < cat_.k0.J(); ++j) {
        const cplx la = cat_.k0.poles[j].x_in;
        acc += cat_.k0.b_in[j] * x / (x - la);
    }
    return sp(g_.gap_below()) * acc;
}

cplx WienerHopfSolution::G1(cplx x) const {
    cplx acc = -sp(g_.gap_below());  // -P(x), constant for odd p
    for (int j = 0; j < cat_.k1.J(); ++j) {
        const cplx la = cat_.k1.poles[j].x_in;
        acc -= g1_coef_[j] * la / (x - la);
    }
    return acc;
}

cplx WienerHopfSolution::PiK1_plus(cplx x) const {
    const cplx k1p = sp(g_.screen_len() - 1) / (sp(1) - sp(g_.screen_len()));
    cplx acc = k1p * xp_ / (x - xp_);
    for (int j = 0; j < cat_.k1.J(); ++j) {
        const cplx la = cat_.k1.poles[j].x_in;
        acc += Pi(la) * cat_.k1.b_in[j] * la / (x - la);
    }
    return acc;
}

cplx WienerHopfSolution::F_full(cplx x) const {
    const int l = g_.gap_below();
    return sp(l) * Upsilon(x) + (Pi(x) * sp(l - 1) - u_star_) * K1(x);
}

cplx WienerHopfSolution::F_plus(cplx x) const {
    const int l = g_.gap_below();
    return sp(l) * x / (x - xp_) + sp(l - 1) * PiK1_plus(x) - u_star_ * K1_plus(x);
}

cplx WienerHopfSolution::F_minus(cplx x) const {
    const int l = g_.gap_below();
    return sp(l) * x / (x - 1.0 / xp_) + sp(l - 1) * PiK1_minus(x) - u_star_ * K1_minus(x);
}

// ---------------------------------------------------------------------------
// Plus functions
// ---------------------------------------------------------------------------

cplx WienerHopfSolution::Q0(cplx x) const {
    cplx q{1.0, 0.0};
    for (const auto& la : cat_.k0.poles) q *= (x - la.x_in) * (x - la.x_out);
    return q;
}

cplx WienerHopfSolution::Q1(cplx x) const {
    cplx q{1.0, 0.0};
    for (const auto& la : cat_.k1.poles) q *= (x - la.x_in) * (x - la.x_out);
    return q;
}

cplx WienerHopfSolution::N_numerator(cplx x) const {
    cplx s1{0.0, 0.0};
    for (size_t j = 0; j < w1_.size(); ++j) s1 += w1_[j] * F1_j(static_cast<int>(j), x);
    cplx s0{0.0, 0.0};
    for (size_t j = 0; j < w0_.size(); ++j) s0 += w0_[j] * F0_j(static_cast<int>(j), x);
    return K0(x) * (s1 + G1(x)) + s0 + G0(x);
}

cplx WienerHopfSolution::U1_plus_raw(cplx x) const {
    // The denominator 1 + K0 K1 equals W/(Q0 Q1) with W evaluated as a product
    // over its known roots; the product form stays fully accurate next to the
    // nearly-confluent root pairs that appear close to a band edge.
    cplx w{1.0, 0.0};
    for (const cplx& r : cat_.w_roots) w *= (x - r);
    return N_numerator(x) * Q0(x) * Q1(x) / w;
}

cplx WienerHopfSolution::U0_plus_raw(cplx x) const {
    cplx s1{0.0, 0.0};
    for (size_t j = 0; j < w1_.size(); ++j) s1 += w1_[j] * F1_j(static_cast<int>(j), x);
    return -U1_plus(x) * K1(x) + s1 + G1(x);
}

cplx WienerHopfSolution::U1_plus(cplx x) const {
    const double d = distance_to(guard_points_, x);
    if (d >= guard_distance) return U1_plus_raw(x);
    // Removable singularity of the assembled expression: recover the value as
    // the mean over a small circle around x.
    double rho = 1e-4;
    for (const auto& g : guard_points_)
        if (std::abs(x - g) > guard_distance) rho = std::min(rho, 0.3 * std::abs(x - g));
    for (const auto& nu : cat_.nu) rho = std::min(rho, 0.3 * std::abs(x - nu.x_in));
    return cauchy_mean([this](cplx t) { return U1_plus_raw(t); }, x, rho);
}

cplx WienerHopfSolution::U0_plus(cplx x) const {
    const double d = distance_to(guard_points_, x);
    if (d >= guard_distance) return U0_plus_raw(x);
    double rho = 1e-4;
    for (const auto& g : guard_points_)
        if (std::abs(x - g) > guard_distance) rho = std::min(rho, 0.3 * std::abs(x - g));
    for (const auto& nu : cat_.nu) rho = std::min(rho, 0.3 * std::abs(x - nu.x_in));
    return cauchy_mean([this](cplx t) { return U0_plus_raw(t); }, x, rho);
}

// ---------------------------------------------------------------------------
// Row transforms
// ---------------------------------------------------------------------------

cplx WienerHopfSolution::phi_row(cplx x, int n) const {
    const int l = g_.gap_below();
    if (n < -l || n > -1) throw std::out_of_range("phi_row: gap rows are -l .. -1");
    if (n == -l) return {0.0, 0.0};
    const cplx z = z_of_x(x, f_.effective());
    const cplx va = chebyshev_V(l + n - 1, z);
    const cplx vb2 = chebyshev_V(l - 2, z);
    const cplx vb1 = chebyshev_V(l - 1, z);
    if (std::abs(vb2) * l >= std::abs(vb1) * (l - 1)) {
        const cplx phi1 = U1_plus(x) + U1_plus(1.0 / x) - u_star_;
        return phi1 * va / vb2;
    }
    const cplx phi0 = U0_plus(x) + U0_plus(1.0 / x) + sp(l);
    return phi0 * va / vb1;
}

cplx WienerHopfSolution::psi_row(cplx x, int n) const {
    const int l = g_.gap_below();
    const int l0 = g_.screen_len();
    if (n < 0 || n > l0 - 1) throw std::out_of_range("psi_row: screen rows are 0 .. l0-1");
    const cplx ups = Upsilon(x);
    const cplx psi0 = U0_plus(1.0 / x) - U0_plus(x) + sp(l);
    const cplx a = psi0 - ups * sp(l);
    const cplx z = z_of_x(x, f_.effective());
    const cplx vden = chebyshev_V(l0 - 2, z);
    if (std::abs(vden) >= 0.1) {
        const cplx ratio = (chebyshev_V(n - 1, z) + chebyshev_V(l0 - 2 - n, z)) / vden;
        return a * ratio + ups * sp(l + n);
    }
    // Near a zero of the denominator polynomial: rebuild the row from the
    // particular-plus-homogeneous split anchored at rows 0 and -1. The
    // extension of the split to row -1 differs from the transform value there
    // by the endpoint forcing, which leaves b = Psi_1 + s_p(l-1) + u* shifted
    // by the particular part.
    const cplx y = y_of_x(x, f_).value;
    const cplx s1 = y - 1.0 / y;
    const cplx b = U1_plus(1.0 / x) - U1_plus(x) - Pi(x) * sp(l - 1);
    const cplx c = (a * y - b) / s1;
    const cplx d = a - c;
    return c * ipow(y, n) + d * ipow(y, -n) + ups * sp(l + n);
}

// ---------------------------------------------------------------------------
// Residues and physical fields
// ---------------------------------------------------------------------------

cplx WienerHopfSolution::u1_residue_at_nu(int i) const {
    const cplx nu_in = cat_.nu[i].x_in;
    return N_numerator(nu_in) * Q0(nu_in) * Q1(nu_in) / cat_.w_derivative(nu_in, 2 * i);
}

cplx WienerHopfSolution::row_residue(int pair, bool inside_member, int n) const {
    const int l = g_.gap_below();
    const int l0 = g_.screen_len();
    const cplx nu_in = cat_.nu[pair].x_in;
    const cplx nu_out = cat_.nu[pair].x_out;
    const cplx r1 = u1_residue_at_nu(pair);
    const cplx z = cat_.nu[pair].z;
    const bool is_p = cat_.nu_mode[pair] == p_;

    if (n < 0) {  // gap row
        const cplx va = chebyshev_V(l + n - 1, z);
        const cplx vb2 = chebyshev_V(l - 2, z);
        cplx res_phi1;
        if (std::abs(vb2) * l >= std::abs(chebyshev_V(l - 1, z)) * (l - 1)) {
            res_phi1 = inside_member ? r1 : -r1 * nu_out * nu_out;
            return res_phi1 * va / vb2;
        }
        const cplx r0 = -K1(nu_in) * r1;
        const cplx res_phi0 = inside_member ? r0 : -r0 * nu_out * nu_out;
        return res_phi0 * va / chebyshev_V(l - 1, z);
    }

    // screen row
    const cplx r0 = -K1(nu_in) * r1;                       // residue of U0+ at nu_in
    const cplx res_psi0 = inside_member ? -r0 : -r0 * nu_out * nu_out;
    const cplx vden = chebyshev_V(l0 - 2, z);
    const cplx ratio = (chebyshev_V(n - 1, z) + chebyshev_V(l0 - 2 - n, z)) / vden;
    if (!is_p) return res_psi0 * ratio;
    const cplx res_ups = inside_member ? nu_in : nu_out;   // residue of Upsilon at x_p^{+-1}
    return (res_psi0 - res_ups * sp(l)) * ratio + res_ups * sp(l + n);
}

std::vector<ContourPole> WienerHopfSolution::row_poles(int n) const {
    std::vector<ContourPole> poles;
    poles.reserve(2 * (cat_.nu.size() + extra_poles_.size()));
    for (size_t i = 0; i < cat_.nu.size(); ++i) {
        poles.push_back({cat_.nu[i].x_in, row_residue(static_cast<int>(i), true, n), true});
        poles.push_back({cat_.nu[i].x_out, row_residue(static_cast<int>(i), false, n), false});
    }
    const int l = g_.gap_below();
    for (const auto& ep : extra_poles_) {
        // Modal form of the residues: M_q x_in s_q(l+n) on the even rows,
        // with the sign and inversion parity of the respective transform.
        const cplx base = ep.amplitude * ep.x_in * mode_sine(ep.q, l + n, g_.N());
        const cplx in_res = n < 0 ? base : -base;
        const cplx out_res = n < 0 ? -in_res * ep.x_out * ep.x_out : in_res * ep.x_out * ep.x_out;
        poles.push_back({ep.x_in, in_res, true});
        poles.push_back({ep.x_out, out_res, false});
    }
    return poles;
}

cplx WienerHopfSolution::row_at_zero(int n) const {
    if (n < 0) {  // gap rows: the transform vanishes at 0 except right below the screen
        if (n == -1) return U1_plus(cplx{0.0, 0.0});
        return {0.0, 0.0};
    }
    if (n == 0 || n == g_.screen_len() - 1) return -U0_plus(cplx{0.0, 0.0});
    return {0.0, 0.0};
}

ComplexField WienerHopfSolution::scattered_field(const FieldWindow& w,
                                                 const QuadratureOptions& opt) const {
    const int l = g_.gap_below();
    const int l0 = g_.screen_len();
    const int m_abs = std::max(std::abs(w.m_min), std::abs(w.m_max));
    ComplexField out(w);
    nodes_used_ = 0;
    std::vector<std::vector<cplx>> by_row(l + l0);
    for (int r = -l; r <= l0 - 1; ++r) {
        const auto poles = row_poles(r);
        int used = 0;
        std::vector<cplx> vals;
        if (r == -l) {
            vals.assign(m_abs + 1, cplx{0.0, 0.0});  // wall row
        } else if (r < 0) {
            vals = inverse_unit_circle([this, r](cplx x) { return phi_row(x, r); }, poles, 0,
                                       m_abs, opt, &used);
        } else {
            // The odd transform flips sign under x -> 1/x, so its inverse
            // carries a minus sign for every m >= 0.
            vals = inverse_unit_circle([this, r](cplx x) { return psi_row(x, r); }, poles, 0,
                                       m_abs, opt, &used);
            for (auto& v : vals) v = -v;
        }
        nodes_used_ = std::max(nodes_used_, used);
        by_row[r + l] = std::move(vals);
    }
    for (int m = w.m_min; m <= w.m_max; ++m) {
        for (int nphys = w.n_min; nphys <= w.n_max; ++nphys) {
            int r = nphys + shift_;
            if (r >= l0) r = l0 - 1 - r;  // mirror across the screen centre
            out.at(m, nphys) = by_row[r + l][std::abs(m)];
        }
    }
    return out;
}

ComplexField WienerHopfSolution::scattered_field_residue(const FieldWindow& w) const {
    const int l = g_.gap_below();
    const int l0 = g_.screen_len();
    const int m_abs = std::max(std::abs(w.m_min), std::abs(w.m_max));
    ComplexField out(w);
    std::vector<std::vector<cplx>> by_row(l + l0);
    for (int r = -l; r <= l0 - 1; ++r) {
        std::vector<cplx> vals;
        if (r == -l) {
            vals.assign(m_abs + 1, cplx{0.0, 0.0});
        } else {
            vals = inside_residue_sum(row_at_zero(r), row_poles(r), 0, m_abs);
            if (r >= 0)
                for (auto& v : vals) v = -v;
        }
        by_row[r + l] = std::move(vals);
    }
    for (int m = w.m_min; m <= w.m_max; ++m) {
        for (int nphys = w.n_min; nphys <= w.n_max; ++nphys) {
            int r = nphys + shift_;
            if (r >= l0) r = l0 - 1 - r;
            out.at(m, nphys) = by_row[r + l][std::abs(m)];
        }
    }
    return out;
}

std::map<int, ModalAmplitude> WienerHopfSolution::modal_amplitudes() const {
    std::map<int, ModalAmplitude> amps;
    const int l = g_.gap_below();
    for (size_t i = 0; i < cat_.nu.size(); ++i) {
        const int q = cat_.nu_mode[i];
        const cplx denom = cat_.nu[i].x_in * mode_sine(q, l - 1, g_.N());
        if (denom == cplx{0.0, 0.0})
            throw DegenerateError("confluent pole: vanishing residue denominator for mode " +
                                  std::to_string(q));
        const cplx mq = u1_residue_at_nu(static_cast<int>(i)) / denom;
        amps[q] = {mq, mode(q, g_, f_).propagating};
    }
    for (const auto& ep : extra_poles_)
        amps[ep.q] = {ep.amplitude, mode(ep.q, g_, f_).propagating};
    return amps;
}

}  // namespace latwave
