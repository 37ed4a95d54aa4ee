#include "ncairy/ncp34.hpp"

#include <algorithm>
#include <cmath>

#include "ncairy/errors.hpp"

namespace ncairy {

namespace {

const cplx I1(0.0, 1.0);

ComplexMatrix a1_third(const HMGrid& grid, double S) {
    BetaJet b = grid.jet(S);
    return (-2.0 * I1) * (2.0 * (b.d1 * b.d1) + anticommutator(b.beta, b.d2)) - I1 * b.d3;
}

ComplexMatrix five_point_derivative(const ComplexMatrix& m2, const ComplexMatrix& m1, const ComplexMatrix& p1,
                                    const ComplexMatrix& p2, double h) {
    ComplexMatrix d = m2 - 8.0 * m1 + 8.0 * p1 - p2;
    d *= 1.0 / (12.0 * h);
    return d;
}

} // namespace

P34State p34_state(const HMGrid& grid, double S) {
    P34State st;
    st.S = S;
    st.s = grid.shift_matrix(S);
    BetaJet b = grid.jet(S);
    ComplexMatrix al = alpha1(grid, S);
    st.a1 = al - I1 * b.beta;
    st.a1p = (-2.0 * I1) * (b.beta * b.beta) - I1 * b.d1;
    st.a1pp = (-2.0 * I1) * anticommutator(b.beta, b.d1) - I1 * b.d2;
    st.a1ppp = (-2.0 * I1) * (2.0 * (b.d1 * b.d1) + anticommutator(b.beta, b.d2)) - I1 * b.d3;
    st.a2 = -grid.integral_a1p_a1(S);
    st.b2 = (0.5 * I1) * st.a1p;
    st.b3 = -0.5 * (st.a1p * st.a1) - (0.25 * I1) * st.a1pp;
    st.b4 = -0.5 * (st.a1p * st.a1p) + (0.5 * I1) * (st.a1p * st.a2) - 0.25 * (st.a1pp * st.a1) -
            (0.125 * I1) * st.a1ppp;
    return st;
}

ComplexMatrix p34_third_rhs(const P34State& st, bool with_a2) {
    ComplexMatrix out = (8.0 * I1) * (commutator(st.a1, st.s) * st.a1);
    out += 8.0 * st.a1;
    if (with_a2) out += (8.0 * I1) * commutator(st.s, st.a2);
    out += (6.0 * I1) * (st.a1p * st.a1p);
    out += 4.0 * anticommutator(st.a1p, st.s);
    return out;
}

ComplexMatrix p34_fourth_rhs(const P34State& st) {
    const ComplexMatrix& s = st.s;
    ComplexMatrix out = (6.0 * I1) * anticommutator(st.a1pp, st.a1p);
    out += (8.0 * I1) * (st.a1p * s * st.a1 + st.a1 * s * st.a1p - s * st.a1 * st.a1p - st.a1p * st.a1 * s);
    out += 4.0 * anticommutator(s, st.a1pp);
    out += 16.0 * st.a1p;
    return out;
}

P34Residual p34_residual(const HMGrid& grid, double S, int fd_steps) {
    if (fd_steps < 1) throw DomainError("p34_residual: fd_steps must be positive");
    double H = grid.step() * fd_steps;
    if (!grid.covers(S - 2.0 * H)) throw OutOfRange("p34_residual: stencil leaves the grid");
    P34State st = p34_state(grid, S);
    P34Residual res;
    res.res3 = max_abs_diff(st.a1ppp, p34_third_rhs(st));
    res.a2_term = ((8.0 * I1) * commutator(st.s, st.a2)).max_abs();

    ComplexMatrix a2[4];
    ComplexMatrix a3[4];
    const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int k = 0; k < 4; ++k) {
        double t = S + offsets[k] * H;
        a2[k] = -grid.integral_a1p_a1(t);
        a3[k] = a1_third(grid, t);
    }
    ComplexMatrix da2 = five_point_derivative(a2[0], a2[1], a2[2], a2[3], H);
    res.res2 = max_abs_diff(da2, st.a1p * st.a1);
    ComplexMatrix da3 = five_point_derivative(a3[0], a3[1], a3[2], a3[3], H);
    res.res4 = max_abs_diff(da3, p34_fourth_rhs(st));
    return res;
}

ComplexMatrix LaxB::B(cplx lambda) const {
    if (std::abs(lambda) < 0.1) throw DomainError("lax_b: |lambda| must be at least 0.1");
    return lambda * lambda * lambda * b3 + lambda * b1 + bm1 * (1.0 / lambda);
}

ComplexMatrix LaxB::VD(cplx lambda) const { return lambda * lambda * v2 + v0; }

ComplexMatrix LaxB::dVD(cplx lambda) const { return (2.0 * lambda) * v2; }

LaxB lax_b(const P34State& st) {
    std::size_t r = st.s.rows();
    ComplexMatrix one = ComplexMatrix::identity(r);
    ComplexMatrix zero(r, r);
    LaxB lb;
    lb.b3 = block2(zero, zero, 0.5 * one, zero);
    lb.b1 = block2(zero, -0.5 * one, st.s - (0.5 * I1) * st.a1p, zero);
    ComplexMatrix ca = commutator(st.a1, st.s);
    ComplexMatrix tl = I1 * ca - (0.25 * I1) * st.a1pp;
    ComplexMatrix tr = -st.s - (0.5 * I1) * st.a1p;
    ComplexMatrix bl = (2.0 * I1) * st.a1 + 2.0 * commutator(st.a2, st.s) +
                       2.0 * (commutator(st.s, st.a1) * st.a1) - 0.5 * (st.a1p * st.a1p);
    ComplexMatrix br = one + I1 * ca + (0.25 * I1) * st.a1pp;
    lb.bm1 = block2(tl, tr, bl, br);
    lb.v2 = block2(zero, zero, one, zero);
    lb.v0 = block2(zero, -one, (-2.0 * I1) * st.a1p, zero);
    return lb;
}

double zero_curvature_residual_p34(const HMGrid& grid, double S, const std::vector<cplx>& lambdas, double h) {
    if (!(h > 0.0)) throw DomainError("zero_curvature_residual_p34: step must be positive");
    if (!grid.covers(S - h)) throw OutOfRange("zero_curvature_residual_p34: stencil leaves the grid");
    LaxB mid = lax_b(p34_state(grid, S));
    LaxB lo = lax_b(p34_state(grid, S - h));
    LaxB hi = lax_b(p34_state(grid, S + h));
    double worst = 0.0;
    for (cplx l : lambdas) {
        ComplexMatrix B = mid.B(l);
        ComplexMatrix V = mid.VD(l);
        ComplexMatrix DB = hi.B(l) - lo.B(l);
        DB *= 1.0 / (2.0 * h);
        ComplexMatrix res = mid.dVD(l) - DB + V * B - B * V;
        worst = std::max(worst, res.max_abs());
    }
    return worst;
}

std::vector<cplx> default_lambda_samples() { return {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-2.0, 0.0), cplx(0.5, 0.5)}; }

} // namespace ncairy
