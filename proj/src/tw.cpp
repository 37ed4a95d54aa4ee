#include "ncairy/tw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/quadrature.hpp"

namespace ncairy {

namespace {

const cplx I1(0.0, 1.0);

double cutoff_for(const ShiftVector& s, double cutoff) { return cutoff > 0.0 ? cutoff : default_cutoff(s); }

void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("det_airy: sign must be +1 or -1");
}

NystromOptions fixed_nodes() {
    NystromOptions o;
    o.refine = false;
    return o;
}

} // namespace

double GapResult::difference() const {
    if (!nystrom || !painleve) return 0.0;
    return std::abs(nystrom->value - *painleve);
}

DetResult det_airy_sq_nystrom(const ShiftVector& s, const CouplingMatrix& c, const NystromOptions& opts, int nodes,
                              double cutoff) {
    MatrixAirySqKernel k(s, c);
    return nystrom_det(k, -1.0, half_line_rule(nodes, cutoff_for(s, cutoff)), opts);
}

DetResult det_airy_nystrom(const ShiftVector& s, const CouplingMatrix& c, int sign, const NystromOptions& opts,
                           int nodes, double cutoff) {
    check_sign(sign);
    MatrixAiryKernel k(s, c);
    return nystrom_det(k, static_cast<double>(sign), half_line_rule(nodes, cutoff_for(s, cutoff)), opts);
}

cplx det_airy_sq_painleve(const HMGrid& grid, double S) {
    return std::exp(-4.0 * grid.integral_weighted_trace_beta2(S));
}

cplx det_airy_painleve(const HMGrid& grid, double S, int sign) {
    check_sign(sign);
    return std::exp(-static_cast<double>(sign) * grid.integral_trace_beta(S) -
                    2.0 * grid.integral_weighted_trace_beta2(S));
}

namespace {

GapResult run_query(const GapQuery& q, const std::function<DetResult(const NystromOptions&)>& nystrom,
                    const std::function<cplx(const HMGrid&, double)>& painleve) {
    if (q.s.size() != q.c.size()) throw DomainError("shift count does not match the coupling size");
    if (!(q.tol >= 1e-10)) throw DomainError("tolerance must be at least 1e-10");
    GapResult res;
    if (q.route != Route::painleve) {
        NystromOptions o;
        o.tol = q.tol;
        res.nystrom = nystrom(o);
    }
    if (q.route != Route::nystrom) {
        auto grid = hm_solve(q.c, q.s.offsets(), q.s.center(), q.hm);
        res.painleve = painleve(*grid, q.s.center());
    }
    return res;
}

} // namespace

GapResult det_airy_sq(const GapQuery& q) {
    return run_query(
        q, [&](const NystromOptions& o) { return det_airy_sq_nystrom(q.s, q.c, o, q.nodes, q.cutoff); },
        [](const HMGrid& g, double S) { return det_airy_sq_painleve(g, S); });
}

GapResult det_airy(const GapQuery& q, int sign) {
    check_sign(sign);
    return run_query(
        q, [&](const NystromOptions& o) { return det_airy_nystrom(q.s, q.c, sign, o, q.nodes, q.cutoff); },
        [sign](const HMGrid& g, double S) { return det_airy_painleve(g, S, sign); });
}

namespace {

void check_scalar_range(double x) {
    if (!(x >= -8.0)) throw DomainError("scalar distributions are provided for x >= -8");
}

} // namespace

ScalarChain::ScalarChain(double x_min, const HMOptions& opts) : x_min_(x_min) {
    check_scalar_range(x_min);
    grid_ = hm_solve(CouplingMatrix::scalar(1.0), {0.0}, 0.5 * x_min, opts);
    dbeta_ = grid_->cumulative([](const BetaJet& b, std::size_t) { return Jet{b.d1, b.d2, b.d3}; });
    t_dbeta_ = grid_->cumulative([](const BetaJet& b, std::size_t) {
        return Jet{b.S * b.d1, b.d1 + b.S * b.d2, 2.0 * b.d2 + b.S * b.d3};
    });
}

double ScalarChain::u(double x) const { return -grid_->beta(0.5 * x)(0, 0).real(); }

double ScalarChain::du(double x) const { return -0.5 * grid_->dbeta(0.5 * x)(0, 0).real(); }

double ScalarChain::integral_u(double x) const { return -2.0 * grid_->integral_trace_beta(0.5 * x).real(); }

double ScalarChain::f2(double x) const {
    return std::exp(-4.0 * grid_->integral_weighted_trace_beta2(0.5 * x).real());
}

double ScalarChain::f1(double x) const { return std::exp(-0.5 * integral_u(x)) * std::sqrt(f2(x)); }

double ScalarChain::w(double x) const {
    double v = u(x);
    return 0.5 * v * v - 0.5 * du(x);
}

double ScalarChain::f1_alt(double x) const {
    // With y = 2t: int_x^inf (y - x) w dy = int_X^inf (t - X)(2 beta^2 + beta') dt, X = x/2.
    double X = 0.5 * x;
    double weighted_b2 = grid_->integral_weighted_trace_beta2(X).real();
    double weighted_db = t_dbeta_(X)(0, 0).real() - X * dbeta_(X)(0, 0).real();
    return std::exp(-(2.0 * weighted_b2 + weighted_db));
}

double ScalarChain::p34_residual(double x, double h) const {
    double v[5];
    for (int k = 0; k < 5; ++k) v[k] = w(x + (k - 2) * h);
    double d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    double d3 = (v[4] - 2.0 * v[3] + 2.0 * v[1] - v[0]) / (2.0 * h * h * h);
    return std::abs(d3 - 12.0 * v[2] * d1 - 2.0 * v[2] - x * d1);
}

double scalar_f2(double x) {
    return ScalarChain(x).f2(x);
}

double scalar_f1(double x) {
    return ScalarChain(x).f1(x);
}

WChecks scalar_w_checks(double x) {
    ScalarChain chain(x);
    return {chain.w(x), chain.f1_alt(x)};
}

MiuraResult miura_residual(double c, double s_center, double h, int nodes) {
    if (!(h > 0.0)) throw DomainError("miura_residual: step must be positive");
    CouplingMatrix cm = CouplingMatrix::scalar(c);
    double cutoff = default_cutoff(ShiftVector({s_center - 2.0 * h}));
    double lx[5];
    double lg[5];
    for (int k = 0; k < 5; ++k) {
        ShiftVector s({s_center + (k - 2) * h});
        lx[k] = det_airy_sq_nystrom(s, cm, fixed_nodes(), nodes, cutoff).log_abs;
        lg[k] = det_airy_nystrom(s, cm, -1, fixed_nodes(), nodes, cutoff).log_abs;
    }
    auto first = [h](const double* l, int k) { return (l[k + 1] - l[k - 1]) / (2.0 * h); };
    double lx1 = first(lx, 2);
    double lg1 = first(lg, 2);
    double lx2 = (lx[3] - 2.0 * lx[2] + lx[1]) / (h * h);
    double lg2 = (lg[3] - 2.0 * lg[2] + lg[1]) / (h * h);
    MiuraResult res;
    double v0 = lx1 - 2.0 * lg1;
    res.residual = std::abs(v0 * v0 + lx2);

    auto v_at = [&](int k) { return first(lx, k) - 2.0 * first(lg, k); };
    double dv = (v_at(3) - v_at(1)) / (2.0 * h);
    double u = 2.0 * lg2;
    double plus = std::abs(u + v0 * v0 - dv);
    double minus = std::abs(u + v0 * v0 + dv);
    res.rem_branch = plus <= minus ? 1 : -1;
    res.rem_residual = std::min(plus, minus);
    return res;
}

double TauDerivatives::max_rel_error() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < fd_xi.size(); ++k) {
        worst = std::max(worst, std::abs(fd_xi[k] - alpha_pred[k]) / std::abs(alpha_pred[k]));
        worst = std::max(worst, std::abs(fd_gamma[k] - a1_pred[k]) / std::abs(a1_pred[k]));
    }
    return worst;
}

TauDerivatives tau_derivatives(const HMGrid& grid, double S, double h, int nodes) {
    std::size_t r = grid.dim();
    std::vector<double> base(r);
    for (std::size_t j = 0; j < r; ++j) base[j] = S + grid.delta()[j];
    double cutoff = default_cutoff(ShiftVector(base)) + 2.0 * h;

    ComplexMatrix al = alpha1(grid, S);
    ComplexMatrix a1 = al - I1 * grid.beta(S);
    const CouplingMatrix& c = grid.coupling();
    // Central difference of ln det at step d, for shift index k.
    auto central = [&](std::size_t k, double d, bool squared) {
        std::vector<double> up = base;
        std::vector<double> dn = base;
        up[k] += d;
        dn[k] -= d;
        ShiftVector su(up);
        ShiftVector sd(dn);
        cplx vu = squared ? det_airy_sq_nystrom(su, c, fixed_nodes(), nodes, cutoff).value
                          : det_airy_nystrom(su, c, -1, fixed_nodes(), nodes, cutoff).value;
        cplx vd = squared ? det_airy_sq_nystrom(sd, c, fixed_nodes(), nodes, cutoff).value
                          : det_airy_nystrom(sd, c, -1, fixed_nodes(), nodes, cutoff).value;
        return std::log(vu / vd) / (2.0 * d);
    };
    // Richardson combination of steps h and h/2.
    auto derivative = [&](std::size_t k, bool squared) {
        return (4.0 * central(k, 0.5 * h, squared) - central(k, h, squared)) / 3.0;
    };
    TauDerivatives td;
    for (std::size_t k = 0; k < r; ++k) {
        td.fd_xi.push_back(derivative(k, true));
        td.fd_gamma.push_back(derivative(k, false));
        td.alpha_pred.push_back(-2.0 * I1 * al(k, k));
        td.a1_pred.push_back(-I1 * a1(k, k));
    }
    return td;
}

double tp_minor(const ShiftVector& s, const CouplingMatrix& c, const std::vector<TPPoint>& points) {
    std::size_t K = points.size();
    std::vector<cplx> m(K * K);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b) {
            if (points[a].level >= s.size() || points[b].level >= s.size())
                throw DomainError("tp_minor: level out of range");
            m[a * K + b] = matrix_airy_sq_kernel(points[a].x, points[b].x, s, c)(points[a].level, points[b].level);
        }
    return lu_determinant(m, K).value().real();
}

TPResult total_positivity_check(const ShiftVector& s, const CouplingMatrix& c, int max_points, int trials,
                                std::uint64_t seed) {
    if (max_points < 1 || max_points > 6) throw DomainError("total_positivity_check: 1 to 6 points per trial");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(1, max_points);
    std::uniform_int_distribution<std::size_t> level(0, s.size() - 1);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    TPResult res;
    res.min_det = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        std::vector<TPPoint> pts(static_cast<std::size_t>(count(rng)));
        for (TPPoint& p : pts) {
            p.level = level(rng);
            p.x = pos(rng);
        }
        res.min_det = std::min(res.min_det, tp_minor(s, c, pts));
        ++res.trials;
    }
    return res;
}

double de_bruijn_two_point(const ShiftVector& s, const CouplingMatrix& c, const TPPoint& a, const TPPoint& b, int m,
                           double z_max) {
    QuadratureRule q = gauss_legendre(m, 0.0, z_max);
    std::size_t r = s.size();
    std::size_t n = q.size();
    // left[p][i]: F(p, (k, z_i)) and right[p][i]: F((k, z_i), p), flattened over k.
    std::vector<cplx> la(r * n), lb(r * n), ra(r * n), rb(r * n);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            double z = q.nodes[i];
            std::size_t idx = k * n + i;
            la[idx] = c(a.level, k) * airy_ai(a.x + z + s[a.level] + s[k]).ai;
            lb[idx] = c(b.level, k) * airy_ai(b.x + z + s[b.level] + s[k]).ai;
            ra[idx] = c(k, a.level) * airy_ai(z + a.x + s[k] + s[a.level]).ai;
            rb[idx] = c(k, b.level) * airy_ai(z + b.x + s[k] + s[b.level]).ai;
        }
    cplx total = 0.0;
    for (std::size_t p = 0; p < r * n; ++p)
        for (std::size_t q2 = 0; q2 < r * n; ++q2) {
            cplx left = la[p] * lb[q2] - la[q2] * lb[p];
            cplx right = ra[p] * rb[q2] - ra[q2] * rb[p];
            total += q.weights[p % n] * q.weights[q2 % n] * left * right;
        }
    return 0.5 * total.real();
}

ScanResult existence_scan(const CouplingMatrix& c, double s_lo, double s_hi, int n) {
    if (n < 2) throw DomainError("existence_scan: need at least 2 points");
    if (!(s_hi > s_lo)) throw DomainError("existence_scan: need s_hi > s_lo");
    std::size_t r = c.size();
    NystromOptions o;
    o.absolute_error = true;
    auto det_at = [&](double s) { return det_airy_sq_nystrom(ShiftVector::uniform(r, s), c, o).value.real(); };
    ScanResult res;
    double step = (s_hi - s_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        double s = s_hi - step * i;
        double d = det_at(s);
        if (!res.crossing && !res.samples.empty() && (d > 0.0) != (res.samples.back().second > 0.0)) {
            double hi = res.samples.back().first;
            double lo = s;
            bool hi_positive = res.samples.back().second > 0.0;
            while (hi - lo > 1e-3) {
                double mid = 0.5 * (hi + lo);
                if ((det_at(mid) > 0.0) == hi_positive) hi = mid;
                else lo = mid;
            }
            res.crossing = 0.5 * (hi + lo);
        }
        res.samples.emplace_back(s, d);
    }
    return res;
}

} // namespace ncairy
