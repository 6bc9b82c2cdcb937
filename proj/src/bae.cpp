#include "latwave/bae.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace latwave {

BaeSolution BaeSolution::solve(const WaveguideGeometry& g, const LatticeFrequency& f, int p,
                               QuadratureOptions opt) {
    g.validate();
    validate_frequency(f);
    const WaveguideMode mp = mode(p, g, f);
    if (!mp.propagating)
        throw DegenerateError("incident mode " + std::to_string(p) + " is below cut-off");

    BaeSolution s;
    s.g_ = g;
    s.f_ = f;
    s.p_ = p;
    s.green_ = std::make_shared<TailoredGreen>(g, f, opt);
    const TailoredGreen& gr = *s.green_;

    const int nn = g.screen_len();
    auto row_of = [&](int i) { return -g.n1 + i; };  // screen rows -n1 .. n2

    // Incident data on and next to the screen.
    const cplx xp = mp.x_factor;
    const cplx cosK = 0.5 * (xp + 1.0 / xp);
    Eigen::VectorXcd uin(nn);
    for (int i = 0; i < nn; ++i) uin(i) = cosK * mode_sine(p, row_of(i) + g.N1, g.N());
    const cplx uin_below = mode_sine(p, -g.n1 - 1 + g.N1, g.N());
    const cplx uin_above = mode_sine(p, g.n2 + 1 + g.N1, g.N());

    // Collocation on the column m = 1: (I - G_N) u = G_N uin + a p + b q.
    Eigen::MatrixXcd GN(nn, nn);
    Eigen::VectorXcd pv(nn), qv(nn);
    for (int i = 0; i < nn; ++i) {
        for (int j = 0; j < nn; ++j) GN(i, j) = 2.0 * gr.value(0, row_of(j), 1, row_of(i));
        pv(i) = gr.value(0, g.n2, 1, row_of(i));
        qv(i) = gr.value(0, -g.n1, 1, row_of(i));
    }
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(nn, nn) - GN;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
        const auto& sv = svd.singularValues();
        if (!(sv(0) / sv(nn - 1) < 1e14))
            throw DegenerateError("resonant configuration: boundary system is singular");
    }
    const Eigen::VectorXcd t0 = lu.solve(GN * uin);
    const Eigen::VectorXcd tp = lu.solve(pv);
    const Eigen::VectorXcd tq = lu.solve(qv);

    // Rows of Green values seen from the two tip nodes.
    Eigen::RowVectorXcd grow(nn), hrow(nn);
    for (int j = 0; j < nn; ++j) {
        grow(j) = gr.value(0, row_of(j), 0, -g.n1 - 1);
        hrow(j) = gr.value(0, row_of(j), 0, g.n2 + 1);
    }
    Eigen::Matrix2cd G2, H2;
    G2 << grow(0), grow(nn - 1), hrow(0), hrow(nn - 1);
    H2 << grow * tq, grow * tp, hrow * tq, hrow * tp;

    Eigen::Matrix2cd corner = Eigen::Matrix2cd::Identity() - G2 - 2.0 * H2;
    Eigen::Vector2cd uin_star(uin_below, uin_above);
    Eigen::Vector2cd rhs2 = (G2 + 2.0 * H2) * uin_star;
    rhs2(0) += 2.0 * (grow * (uin + t0))(0, 0);
    rhs2(1) += 2.0 * (hrow * (uin + t0))(0, 0);
    if (std::abs(corner.determinant()) < 1e-14 * corner.norm() * corner.norm())
        throw DegenerateError("resonant configuration: corner system is singular");
    const Eigen::Vector2cd ustar = corner.lu().solve(rhs2);
    s.corner_below_ = ustar(0);
    s.corner_above_ = ustar(1);

    const cplx a = ustar(1) + uin_above;
    const cplx b = ustar(0) + uin_below;
    const Eigen::VectorXcd u = t0 + a * tp + b * tq;
    s.u_.assign(u.data(), u.data() + nn);

    s.weight_.resize(nn);
    for (int i = 0; i < nn; ++i) {
        s.weight_[i] = 2.0 * (s.u_[i] + uin(i));
        if (row_of(i) == g.n2) s.weight_[i] += a;
        if (row_of(i) == -g.n1) s.weight_[i] += b;
    }
    return s;
}

cplx BaeSolution::scattered_at(int m, int n) const {
    cplx acc{0.0, 0.0};
    for (int i = 0; i < g_.screen_len(); ++i)
        acc += green_->value(0, -g_.n1 + i, m, n) * weight_[i];
    return acc;
}

ComplexField BaeSolution::scattered_field(const FieldWindow& w) const {
    const int m_abs = std::max(std::abs(w.m_min), std::abs(w.m_max));
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int i = 0; i < g_.screen_len(); ++i) green_->prefetch(m_abs, -g_.n1 + i, n);
    ComplexField out(w);
    for (int m = w.m_min; m <= w.m_max; ++m)
        for (int n = w.n_min; n <= w.n_max; ++n) out.at(m, n) = scattered_at(m, n);
    return out;
}

}  // namespace latwave
