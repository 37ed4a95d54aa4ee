#include "ncairy/ncp2.hpp"

#include <algorithm>
#include <cmath>

namespace ncairy {

namespace {

const cplx I1(0.0, 1.0);

// Quintic Hermite basis on [0, 1].
struct HermiteBasis {
    double h0, h1, h2, h3, h4, h5;
};

HermiteBasis hermite_basis(double u) {
    double u2 = u * u;
    double u3 = u2 * u;
    double u4 = u3 * u;
    double u5 = u4 * u;
    return {1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5,
            u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5,
            0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5),
            10.0 * u3 - 15.0 * u4 + 6.0 * u5,
            -4.0 * u3 + 7.0 * u4 - 3.0 * u5,
            0.5 * (u3 - 2.0 * u4 + u5)};
}

// Interpolant through (f0, f0', f0'') at t0 and (f1, f1', f1'') at t0 + h.
ComplexMatrix hermite_eval(const ComplexMatrix& f0, const ComplexMatrix& d0, const ComplexMatrix& e0,
                           const ComplexMatrix& f1, const ComplexMatrix& d1, const ComplexMatrix& e1, double h,
                           double u) {
    HermiteBasis b = hermite_basis(u);
    ComplexMatrix out = b.h0 * f0;
    out += (b.h1 * h) * d0;
    out += (b.h2 * h * h) * e0;
    out += b.h3 * f1;
    out += (b.h4 * h) * d1;
    out += (b.h5 * h * h) * e1;
    return out;
}

// Exact integral of the quintic interpolant over the full step.
ComplexMatrix hermite_step(const Jet& left, const Jet& right, double h) {
    ComplexMatrix out = (0.5 * h) * (left.f + right.f);
    out += (h * h / 10.0) * (left.d1 - right.d1);
    out += (h * h * h / 120.0) * (left.d2 + right.d2);
    return out;
}

// Integral of the interpolant over [u, 1] (in step units), 3-point Gauss.
ComplexMatrix hermite_partial(const Jet& left, const Jet& right, double h, double u) {
    static const double xs[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double ws[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    ComplexMatrix out(left.f.rows(), left.f.cols());
    double half = 0.5 * (1.0 - u);
    for (int q = 0; q < 3; ++q) {
        double uq = u + half * (1.0 + xs[q]);
        ComplexMatrix v = hermite_eval(left.f, left.d1, left.d2, right.f, right.d1, right.d2, h, uq);
        out += (ws[q] * half * h) * v;
    }
    return out;
}

ComplexMatrix shift_diag(double S, const std::vector<double>& delta) {
    ComplexMatrix s(delta.size(), delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j) s(j, j) = S + delta[j];
    return s;
}

struct State {
    ComplexMatrix b, db;
};

State rk4_step(double S, const State& y, double h, const std::vector<double>& delta) {
    auto f = [&](double t, const State& s) { return State{s.db, ncp2_rhs(t, delta, s.b)}; };
    State k1 = f(S, y);
    State y2{y.b + (0.5 * h) * k1.b, y.db + (0.5 * h) * k1.db};
    State k2 = f(S + 0.5 * h, y2);
    State y3{y.b + (0.5 * h) * k2.b, y.db + (0.5 * h) * k2.db};
    State k3 = f(S + 0.5 * h, y3);
    State y4{y.b + h * k3.b, y.db + h * k3.db};
    State k4 = f(S + h, y4);
    State out = y;
    out.b += (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
    out.db += (h / 6.0) * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db);
    return out;
}

constexpr double kBlowUp = 1e8;

struct BlowUp {
    double at;
};

// One grid step of size h (negative: downward). Where |beta| h is large the
// step is split dyadically so the growth towards a pole stays resolved.
void advance(double S, State& y, double h, const std::vector<double>& delta, int depth) {
    if (y.b.max_abs() * std::abs(h) > 0.05 && depth < 24) {
        advance(S, y, 0.5 * h, delta, depth + 1);
        advance(S + 0.5 * h, y, 0.5 * h, delta, depth + 1);
        return;
    }
    y = rk4_step(S, y, h, delta);
    double norm = y.b.max_abs();
    if (!(norm <= kBlowUp)) throw BlowUp{S + h};
}

} // namespace

ComplexMatrix ncp2_rhs(double S, const std::vector<double>& delta, const ComplexMatrix& beta) {
    ComplexMatrix s = shift_diag(S, delta);
    ComplexMatrix out = 4.0 * anticommutator(s, beta);
    out += 8.0 * (beta * beta * beta);
    return out;
}

ComplexMatrix ncp2_third(double S, const std::vector<double>& delta, const ComplexMatrix& beta,
                         const ComplexMatrix& dbeta) {
    ComplexMatrix s = shift_diag(S, delta);
    ComplexMatrix out = 8.0 * beta;
    out += 4.0 * anticommutator(s, dbeta);
    out += 8.0 * (dbeta * beta * beta + beta * dbeta * beta + beta * beta * dbeta);
    return out;
}

ComplexMatrix CumulativeIntegral::operator()(double S) const {
    const HMGrid& g = *grid_;
    if (S >= tail_->s0() - 1e-12 * std::max(1.0, std::abs(S))) {
        if (S < tail_->s0()) S = tail_->s0();
        ComplexMatrix out = tail_->integrate(S, tail_samples_);
        out += beyond_;
        return out;
    }
    double frac = 0.0;
    std::size_t n = g.node_below(S, frac);
    if (frac == 0.0) return at_nodes_[n];
    BetaJet lo = g.node_jet(n + 1);
    BetaJet hi = g.node_jet(n);
    Jet left = jet_(lo, n + 1);
    Jet right = jet_(hi, n);
    ComplexMatrix out = at_nodes_[n];
    out += hermite_partial(left, right, g.h_, 1.0 - frac);
    return out;
}

HMGrid::HMGrid(CouplingMatrix c, std::vector<double> delta, std::shared_ptr<const HMTail> tail, double h,
               std::vector<ComplexMatrix> beta, std::vector<ComplexMatrix> dbeta, std::optional<double> pole_at)
    : c_(std::move(c)), delta_(std::move(delta)), tail_(std::move(tail)), h_(h), beta_(std::move(beta)),
      dbeta_(std::move(dbeta)), pole_at_(pole_at) {
    beta2_ = cumulative([](const BetaJet& b, std::size_t) {
        return Jet{b.beta * b.beta, anticommutator(b.beta, b.d1),
                   b.d2 * b.beta + 2.0 * (b.d1 * b.d1) + b.beta * b.d2};
    });
    beta2_.beyond_ = tail_->beta2_beyond();

    auto tr = [](const ComplexMatrix& m) { return ComplexMatrix(1, 1, {m.trace()}); };
    trace_beta_ = cumulative([tr](const BetaJet& b, std::size_t) { return Jet{tr(b.beta), tr(b.d1), tr(b.d2)}; });
    t_trace_beta2_ = cumulative([tr](const BetaJet& b, std::size_t) {
        ComplexMatrix f = tr(b.beta * b.beta);
        ComplexMatrix f1 = tr(anticommutator(b.beta, b.d1));
        ComplexMatrix f2 = tr(b.d2 * b.beta + 2.0 * (b.d1 * b.d1) + b.beta * b.d2);
        return Jet{b.S * f, f + b.S * f1, 2.0 * f1 + b.S * f2};
    });

    // a1 = alpha1 - i beta needs alpha1 at every sample point.
    std::vector<ComplexMatrix> alpha_grid(beta_.size());
    for (std::size_t n = 0; n < beta_.size(); ++n) alpha_grid[n] = (2.0 * I1) * beta2_.at_nodes_[n];
    const std::vector<double>& tn = tail_->nodes();
    std::vector<ComplexMatrix> alpha_tail(tn.size());
    for (std::size_t j = 0; j < tn.size(); ++j) alpha_tail[j] = (2.0 * I1) * beta2_(tn[j]);

    auto a1_jet = [](const BetaJet& b, const ComplexMatrix& alpha) {
        ComplexMatrix a1 = alpha - I1 * b.beta;
        ComplexMatrix a1p = (-2.0 * I1) * (b.beta * b.beta) - I1 * b.d1;
        ComplexMatrix a1pp = (-2.0 * I1) * anticommutator(b.beta, b.d1) - I1 * b.d2;
        ComplexMatrix a1ppp =
            (-2.0 * I1) * (2.0 * (b.d1 * b.d1) + anticommutator(b.beta, b.d2)) - I1 * b.d3;
        return Jet{a1p * a1, a1pp * a1 + a1p * a1p, a1ppp * a1 + 2.0 * (a1pp * a1p) + a1p * a1pp};
    };
    // Tail samples are matched to their alpha1 through the abscissa.
    a1p_a1_ = cumulative([tn, alpha_grid = std::move(alpha_grid), alpha_tail = std::move(alpha_tail),
                          a1_jet](const BetaJet& b, std::size_t n) {
        if (n != npos) return a1_jet(b, alpha_grid[n]);
        auto it = std::lower_bound(tn.begin(), tn.end(), b.S);
        return a1_jet(b, alpha_tail[static_cast<std::size_t>(it - tn.begin())]);
    });
}

CumulativeIntegral HMGrid::cumulative(std::function<Jet(const BetaJet&, std::size_t)> jet) const {
    CumulativeIntegral ci;
    ci.grid_ = this;
    ci.jet_ = std::move(jet);
    ci.tail_ = tail_;
    const std::vector<double>& tn = tail_->nodes();
    ci.tail_samples_.resize(tn.size());
    for (std::size_t j = 0; j < tn.size(); ++j) ci.tail_samples_[j] = ci.jet_(tail_jet(j), npos).f;
    ci.beyond_ = ComplexMatrix(ci.tail_samples_.front().rows(), ci.tail_samples_.front().cols());
    ci.at_nodes_.resize(beta_.size());
    ci.at_nodes_[0] = tail_->integrate(tail_->s0(), ci.tail_samples_);
    if (beta_.size() > 1) {
        Jet upper = ci.jet_(node_jet(0), 0);
        for (std::size_t n = 0; n + 1 < beta_.size(); ++n) {
            Jet lower = ci.jet_(node_jet(n + 1), n + 1);
            ci.at_nodes_[n + 1] = ci.at_nodes_[n] + hermite_step(lower, upper, h_);
            upper = std::move(lower);
        }
    }
    return ci;
}

double HMGrid::s_min() const { return tail_->s0() - h_ * static_cast<double>(beta_.size() - 1); }

std::vector<double> HMGrid::s_values() const {
    std::vector<double> s(beta_.size());
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = tail_->s0() - h_ * static_cast<double>(n);
    return s;
}

ComplexMatrix HMGrid::shift_matrix(double S) const { return shift_diag(S, delta_); }

std::size_t HMGrid::node_below(double S, double& frac) const {
    double pos = (tail_->s0() - S) / h_;
    double rounded = std::round(pos);
    if (std::abs(pos - rounded) < 1e-9) {
        pos = rounded;
    }
    if (pos < 0.0) pos = 0.0;
    std::size_t last = beta_.size() - 1;
    if (pos > static_cast<double>(last)) throw OutOfRange("HMGrid: point below the computed grid");
    std::size_t n = static_cast<std::size_t>(std::floor(pos));
    frac = pos - static_cast<double>(n);
    if (n == last) frac = 0.0;
    return n;
}

BetaJet HMGrid::node_jet(std::size_t n) const {
    double S = tail_->s0() - h_ * static_cast<double>(n);
    BetaJet j;
    j.S = S;
    j.beta = beta_[n];
    j.d1 = dbeta_[n];
    j.d2 = ncp2_rhs(S, delta_, j.beta);
    j.d3 = ncp2_third(S, delta_, j.beta, j.d1);
    return j;
}

BetaJet HMGrid::tail_jet(std::size_t i) const {
    BetaJet j;
    j.S = tail_->nodes()[i];
    j.beta = tail_->beta_nodes()[i];
    j.d1 = tail_->dbeta_nodes()[i];
    j.d2 = ncp2_rhs(j.S, delta_, j.beta);
    j.d3 = ncp2_third(j.S, delta_, j.beta, j.d1);
    return j;
}

BetaJet HMGrid::jet(double S) const {
    if (S >= tail_->s0()) {
        BetaJet j;
        j.S = S;
        j.beta = tail_->beta(S);
        j.d1 = tail_->dbeta(S);
        j.d2 = ncp2_rhs(S, delta_, j.beta);
        j.d3 = ncp2_third(S, delta_, j.beta, j.d1);
        return j;
    }
    double frac = 0.0;
    std::size_t n = node_below(S, frac);
    if (frac == 0.0) return node_jet(n);
    BetaJet lo = node_jet(n + 1);
    BetaJet hi = node_jet(n);
    double u = 1.0 - frac;
    BetaJet j;
    j.S = S;
    j.beta = hermite_eval(lo.beta, lo.d1, lo.d2, hi.beta, hi.d1, hi.d2, h_, u);
    j.d1 = hermite_eval(lo.d1, lo.d2, lo.d3, hi.d1, hi.d2, hi.d3, h_, u);
    j.d2 = ncp2_rhs(S, delta_, j.beta);
    j.d3 = ncp2_third(S, delta_, j.beta, j.d1);
    return j;
}

ComplexMatrix HMGrid::beta(double S) const { return jet(S).beta; }

ComplexMatrix HMGrid::dbeta(double S) const { return jet(S).d1; }

cplx HMGrid::integral_weighted_trace_beta2(double S) const {
    return t_trace_beta2_(S)(0, 0) - S * beta2_(S).trace();
}

PoleEncountered::PoleEncountered(double pole, std::shared_ptr<const HMGrid> grid)
    : Error("Hastings-McLeod solution blows up near S = " + std::to_string(pole)), pole_(pole),
      grid_(std::move(grid)) {}

std::shared_ptr<const HMGrid> hm_continue(const CouplingMatrix& c, const std::vector<double>& delta,
                                          std::shared_ptr<const HMTail> tail, double s_min, double h) {
    if (!(h > 0.0) || h > 1e-2) throw DomainError("hm_continue: step must lie in (0, 1e-2]");
    double s0 = tail->s0();
    std::size_t steps = 0;
    if (s_min < s0) steps = static_cast<std::size_t>(std::ceil((s0 - s_min) / h - 1e-9));
    State y{tail->beta(s0), tail->dbeta(s0)};
    std::vector<ComplexMatrix> beta{y.b};
    std::vector<ComplexMatrix> dbeta{y.db};
    beta.reserve(steps + 1);
    dbeta.reserve(steps + 1);
    std::optional<double> pole;
    for (std::size_t n = 0; n < steps; ++n) {
        double S = s0 - h * static_cast<double>(n);
        try {
            advance(S, y, -h, delta, 0);
        } catch (const BlowUp& b) {
            pole = b.at;
            break;
        }
        beta.push_back(y.b);
        dbeta.push_back(y.db);
    }
    auto grid = std::make_shared<const HMGrid>(c, delta, tail, h, std::move(beta), std::move(dbeta), pole);
    if (pole) throw PoleEncountered(*pole, grid);
    return grid;
}

std::shared_ptr<const HMGrid> hm_solve(const CouplingMatrix& c, const std::vector<double>& delta, double s_min,
                                       const HMOptions& opts) {
    double m = 0.0;
    for (double d : delta) m = std::max(m, std::abs(d));
    double s0 = std::max(opts.s0, 1.0 + m);
    for (int attempt = 0;; ++attempt) {
        try {
            auto tail = hm_tail_picard(c, delta, s0, s0 + opts.span, opts.n_tail, opts.tol);
            return hm_continue(c, delta, tail, s_min, opts.step);
        } catch (const NoContraction&) {
            if (attempt >= opts.s0_raises) throw;
            s0 += 0.5;
        }
    }
}

ComplexMatrix alpha1(const HMGrid& grid, double S) { return (2.0 * I1) * grid.integral_beta2(S); }

double ncp2_residual(const HMGrid& grid, double S) {
    double h = grid.step();
    if (!grid.covers(S - 2.0 * h)) throw OutOfRange("ncp2_residual: stencil leaves the grid");
    ComplexMatrix b[5];
    for (int k = 0; k < 5; ++k) b[k] = grid.beta(S + (k - 2) * h);
    ComplexMatrix d2 = (-1.0 * b[0] + 16.0 * b[1] - 30.0 * b[2] + 16.0 * b[3] - 1.0 * b[4]);
    d2 *= 1.0 / (12.0 * h * h);
    return max_abs_diff(d2, ncp2_rhs(S, grid.delta(), b[2]));
}

const Pauli& pauli() {
    static const Pauli p{ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}), ComplexMatrix(2, 2, {0.0, I1, -I1, 0.0}),
                         ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}), ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}),
                         ComplexMatrix(2, 2, {0.0, 0.0, 1.0, 0.0}), ComplexMatrix::identity(2)};
    return p;
}

ComplexMatrix LaxPair::A(cplx lambda) const { return lambda * lambda * a2 + lambda * a1 + a0; }

ComplexMatrix LaxPair::UD(cplx lambda) const { return lambda * ud1 + ud0; }

ComplexMatrix LaxPair::Uj(std::size_t j, cplx lambda) const { return lambda * uj1[j] + uj0[j]; }

LaxPair lax_matrices(const HMGrid& grid, double S) {
    const Pauli& P = pauli();
    std::size_t r = grid.dim();
    ComplexMatrix one = ComplexMatrix::identity(r);
    BetaJet b = grid.jet(S);
    ComplexMatrix al = alpha1(grid, S);
    ComplexMatrix s = grid.shift_matrix(S);
    LaxPair lp;
    lp.r = r;
    lp.a2 = (0.5 * I1) * tensor(one, P.s3);
    lp.a1 = tensor(b.beta, P.s1);
    lp.a0 = -0.5 * tensor(b.d1, P.s2) + I1 * tensor(b.beta * b.beta + s, P.s3);
    lp.ud1 = I1 * tensor(one, P.s3);
    lp.ud0 = 2.0 * tensor(b.beta, P.s1);
    for (std::size_t j = 0; j < r; ++j) {
        ComplexMatrix e(r, r);
        e(j, j) = 1.0;
        lp.uj1.push_back(I1 * tensor(e, P.s3));
        lp.uj0.push_back(I1 * tensor(commutator(al, e), P.one) + tensor(anticommutator(b.beta, e), P.s1));
    }
    return lp;
}

double zero_curvature_residual_p2(const HMGrid& grid, double S, const std::vector<cplx>& lambdas) {
    const Pauli& P = pauli();
    std::size_t r = grid.dim();
    ComplexMatrix one = ComplexMatrix::identity(r);
    LaxPair lp = lax_matrices(grid, S);
    BetaJet b = grid.jet(S);
    ComplexMatrix dA0 = -0.5 * tensor(b.d2, P.s2) + I1 * tensor(anticommutator(b.beta, b.d1) + one, P.s3);
    ComplexMatrix dA1 = tensor(b.d1, P.s1);
    double worst = 0.0;
    for (cplx l : lambdas) {
        ComplexMatrix A = lp.A(l);
        ComplexMatrix U = lp.UD(l);
        ComplexMatrix res = lp.ud1 - (l * dA1 + dA0) + commutator(U, A);
        worst = std::max(worst, res.max_abs());
    }
    return worst;
}

ComplexMatrix beta2_coefficient(const HMGrid& grid, double S) {
    BetaJet b = grid.jet(S);
    return (-0.5 * I1) * b.d1 - I1 * (b.beta * alpha1(grid, S));
}

} // namespace ncairy
