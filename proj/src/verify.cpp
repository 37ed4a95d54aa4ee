#include "ncairy/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/kernels.hpp"
#include "ncairy/ncp2.hpp"
#include "ncairy/ncp34.hpp"
#include "ncairy/quadrature.hpp"
#include "ncairy/simd.hpp"
#include "ncairy/tw.hpp"

namespace ncairy {

namespace {

const cplx I1(0.0, 1.0);

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt2(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome bound(const char* what, double value, double limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3e (limit %.1e)", what, value, limit);
    return {value <= limit, buf};
}

CouplingMatrix with_sigma(ComplexMatrix c, double sigma) {
    c *= sigma / largest_singular_value(c);
    return CouplingMatrix(c);
}

struct Case {
    std::string label;
    CouplingMatrix c;
    std::vector<double> delta;
};

// r in {1, 2} x {0.8 I, dense Hermitean with sigma_max 1, real nonsymmetric
// with sigma_max 0.9}.
std::vector<Case> case_matrix() {
    std::vector<Case> out;
    out.push_back({"r1-diag", CouplingMatrix::scalar(0.8), {0.0}});
    out.push_back({"r1-herm", CouplingMatrix::scalar(1.0), {0.0}});
    out.push_back({"r1-real", CouplingMatrix::scalar(-0.9), {0.0}});
    out.push_back({"r2-diag", CouplingMatrix(ComplexMatrix(2, 2, {0.8, 0.0, 0.0, 0.8})), {-0.25, 0.25}});
    out.push_back({"r2-herm",
                   with_sigma(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}), 1.0),
                   {-0.25, 0.25}});
    out.push_back({"r2-real", with_sigma(ComplexMatrix(2, 2, {0.5, 0.4, -0.3, 0.6}), 0.9), {-0.25, 0.25}});
    return out;
}

ShiftVector shifts_at(double S, const std::vector<double>& delta) { return ShiftVector::from_center(S, delta); }

Outcome check_wronskian(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-20.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        AiryEval e = airy_eval(d(rng));
        worst = std::max(worst, std::abs((e.ai * e.bip - e.aip * e.bi) * std::numbers::pi - 1.0));
    }
    return bound("max relative Wronskian error", worst, 1e-10);
}

Outcome check_airy_ode(std::uint64_t) {
    const double h = 1e-3;
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double x = -10.0 + 0.05 * i;
        double f[5];
        for (int k = 0; k < 5; ++k) f[k] = airy_ai(x + (k - 2) * h).ai;
        double d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
        worst = std::max(worst, std::abs(d2 - x * f[2]));
    }
    return bound("max |Ai'' - x Ai|", worst, 1e-6);
}

Outcome check_scaled(std::uint64_t) {
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double x = 0.1 * i;
        AiryEval u = airy_eval(x);
        AiryEval s = airy_scaled(x);
        double dec = std::exp(-s.zeta);
        double gro = std::exp(s.zeta);
        worst = std::max(worst, std::abs(s.ai * dec / u.ai - 1.0));
        worst = std::max(worst, std::abs(s.bi * gro / u.bi - 1.0));
        worst = std::max(worst, std::abs(s.aip * dec / u.aip - 1.0));
        worst = std::max(worst, std::abs(s.bip * gro / u.bip - 1.0));
    }
    return bound("max relative scaled/unscaled difference", worst, 1e-10);
}

Outcome check_seams(std::uint64_t) {
    double worst = 0.0;
    for (double x : {-kAirySeriesLimit, kAirySeriesLimit}) {
        AiryEval a = airy_series_branch(x);
        AiryEval b = airy_asymptotic_branch(x);
        double sv = x > 0 ? 1.0 : std::hypot(b.ai, b.bi);
        double sd = x > 0 ? 1.0 : std::hypot(b.aip, b.bip);
        auto rel = [&](double p, double q, double scale) {
            return std::abs(p - q) / (x > 0 ? std::abs(q) : scale);
        };
        worst = std::max({worst, rel(a.ai, b.ai, sv), rel(a.bi, b.bi, sv), rel(a.aip, b.aip, sd),
                          rel(a.bip, b.bip, sd)});
    }
    return bound("max relative seam jump", worst, 1e-11);
}

Outcome check_sq_kernel(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 3.0);
    QuadratureRule q = gauss_legendre(200, 0.0, 40.0);
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
        CouplingMatrix c(ComplexMatrix(2, 2, {u(rng), u(rng), u(rng), u(rng)}));
        ShiftVector s({u(rng), u(rng)});
        double x = pos(rng);
        double y = pos(rng);
        ComplexMatrix k = matrix_airy_sq_kernel(x, y, s, c);
        for (std::size_t j1 = 0; j1 < 2; ++j1)
            for (std::size_t j2 = 0; j2 < 2; ++j2) {
                cplx ref = 0.0;
                for (std::size_t kk = 0; kk < 2; ++kk)
                    for (std::size_t i = 0; i < q.size(); ++i) {
                        double z = q.nodes[i];
                        ref += q.weights[i] * c(j1, kk) * c(kk, j2) * airy_ai(x + z + s[j1] + s[kk]).ai *
                               airy_ai(y + z + s[j2] + s[kk]).ai;
                    }
                worst = std::max(worst, std::abs(k(j1, j2) - ref));
            }
    }
    return bound("max |closed form - quadrature|", worst, 1e-8);
}

Outcome check_scalar_kernel(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-2.0, 3.0);
    QuadratureRule q = gauss_legendre(200, 0.0, 40.0);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        double a = d(rng);
        double b = t == 0 ? a : d(rng);
        double ref = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            ref += q.weights[i] * airy_ai(a + q.nodes[i]).ai * airy_ai(b + q.nodes[i]).ai;
        worst = std::max(worst, std::abs(scalar_airy_kernel(a, b) - ref));
    }
    return bound("max |K_Ai - quadrature|", worst, 1e-8);
}

Outcome check_hermitean_kernels(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    ShiftVector s({-0.3, 0.4});
    double worst = 0.0;
    for (double x : {0.0, 0.7, 2.5})
        for (double y : {0.1, 1.3}) {
            worst = std::max(worst, max_abs_diff(matrix_airy_kernel(x, y, s, c),
                                                 matrix_airy_kernel(y, x, s, c).adjoint()));
            worst = std::max(worst, max_abs_diff(matrix_airy_sq_kernel(x, y, s, c),
                                                 matrix_airy_sq_kernel(y, x, s, c).adjoint()));
        }
    return bound("max |K(x,y) - K(y,x)^*|", worst, 1e-14);
}

Outcome check_gauss_legendre(std::uint64_t) {
    double worst = 0.0;
    for (int m = 2; m <= 64; ++m) {
        QuadratureRule q = gauss_legendre(m);
        int p = 2 * m - 2;
        double sum = 0.0;
        double wsum = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            sum += q.weights[i] * std::pow(q.nodes[i], p);
            wsum += q.weights[i];
        }
        worst = std::max({worst, std::abs(sum - 2.0 / (p + 1)), std::abs(wsum - 2.0)});
    }
    return bound("max exactness error", worst, 1e-13);
}

Outcome check_rank_one(std::uint64_t) {
    FunctionKernel k(1, [](double x, double y) { return ComplexMatrix(1, 1, {std::exp(-x - y)}); });
    NystromOptions o;
    o.refine = false;
    DetResult d = nystrom_det(k, 1.0, half_line_rule(40, 40.0), o);
    return bound("|det - 1.5|", std::abs(d.value - 1.5), 1e-10);
}

Outcome check_factorization(std::uint64_t) {
    double worst = 0.0;
    for (const Case& cs : case_matrix())
        for (double S : {0.0, 1.0}) {
            ShiftVector s = shifts_at(S, cs.delta);
            cplx sq = det_airy_sq_nystrom(s, cs.c).value;
            cplx m = det_airy_nystrom(s, cs.c, -1).value;
            cplx p = det_airy_nystrom(s, cs.c, 1).value;
            worst = std::max(worst, std::abs(m * p - sq) / std::abs(sq));
        }
    return bound("max relative factorization error", worst, 1e-8);
}

Outcome check_contour(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> sh(0.0, 1.5);
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
        std::size_t r = 1 + static_cast<std::size_t>(t % 2);
        ComplexMatrix m(r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) m(j, k) = cplx(u(rng), t >= 3 ? u(rng) : 0.0);
        CouplingMatrix c = with_sigma(m, 0.9);
        std::vector<double> sv(r);
        for (double& v : sv) v = sh(rng);
        ShiftVector s(sv);
        double z = t % 2 ? 1.0 : -1.0;
        cplx half = det_airy_nystrom(s, c, static_cast<int>(z)).value;
        cplx cont = nystrom_det_contour(s, c, z).value;
        worst = std::max(worst, std::abs(half - cont));
    }
    return bound("max |contour - half-line|", worst, 1e-6);
}

Outcome check_weight_splitting(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, 0.2, -0.4, 0.5}));
    MatrixAiryKernel k(ShiftVector({0.1, 0.5}), c);
    QuadratureRule rule = half_line_rule(60, 40.0);
    NystromOptions o;
    o.refine = false;
    cplx a = nystrom_det(k, -1.0, rule, o).value;
    cplx b = nystrom_det_one_sided(k, -1.0, rule).value;
    return bound("|symmetric - one-sided|", std::abs(a - b), 1e-12);
}

Outcome check_refinement(std::uint64_t) {
    CouplingMatrix c = CouplingMatrix::scalar(1.0);
    MatrixAirySqKernel k(ShiftVector({-1.0}), c);
    NystromOptions o;
    o.refine = false;
    double cutoff = 44.0;
    cplx d10 = nystrom_det(k, -1.0, half_line_rule(10, cutoff), o).value;
    cplx d20 = nystrom_det(k, -1.0, half_line_rule(20, cutoff), o).value;
    cplx d40 = nystrom_det(k, -1.0, half_line_rule(40, cutoff), o).value;
    double e1 = std::abs(std::log(d20 / d10));
    double e2 = std::abs(std::log(d40 / d20));
    return {e2 < e1, fmt2("successive differences %.3e, %.3e", e1, e2)};
}

Outcome check_spectral_radius(std::uint64_t) {
    auto kernel_at = [](double s) {
        return FunctionKernel(1, [s](double x, double y) {
            return ComplexMatrix(1, 1, {scalar_airy_kernel(x + s, y + s)});
        });
    };
    double hi = spectral_radius(kernel_at(5.0), half_line_rule(60, 40.0));
    double lo = spectral_radius(kernel_at(-6.0), half_line_rule(80, 52.0));
    bool ok = hi <= 1e-6 && lo > 0.9 && lo < 1.0;
    return {ok, fmt2("Lambda(5) = %.3e, Lambda(-6) = %.6f", hi, lo)};
}

Outcome check_ncp2_residual(std::uint64_t) {
    double worst = 0.0;
    for (const Case& cs : case_matrix()) {
        auto g = hm_solve(cs.c, cs.delta, -1.5);
        for (int i = 0; i <= 75; ++i) {
            double S = -1.5 + 0.1 * i;
            if (i == 0) S += 2.0 * g->step();
            worst = std::max(worst, ncp2_residual(*g, S));
        }
    }
    return bound("max residual on [-1.5, 6]", worst, 1e-6);
}

Outcome check_asymptotics(std::uint64_t) {
    ComplexMatrix m(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5});
    CouplingMatrix c(m);
    std::vector<double> delta{-0.5, 0.5};
    const double S = 5.0;
    auto g = hm_solve(c, delta, S);
    double mm = 0.5;
    double limit = 10.0 * std::sqrt(S) * std::exp(-(4.0 / 3.0) * std::pow(2.0 * S - 2.0 * mm, 1.5));
    ComplexMatrix b = g->beta(S);
    double worst = 0.0;
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
            worst = std::max(worst, std::abs(b(k, l) + c(k, l) * airy_ai(2.0 * S + delta[k] + delta[l]).ai));
    return bound("max |beta + c Ai| at S = 5", worst, limit);
}

Outcome check_parity(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.5, 0.4, -0.3, 0.6}));
    auto a = hm_solve(c, {-0.25, 0.25}, -1.0);
    auto b = hm_solve(c.negated(), {-0.25, 0.25}, -1.0);
    double worst = 0.0;
    for (std::size_t n = 0; n < a->beta_nodes().size(); ++n)
        worst = std::max(worst, max_abs_diff(a->beta_nodes()[n], -b->beta_nodes()[n]));
    return bound("max |beta(C) + beta(-C)|", worst, 1e-12);
}

Outcome check_hermiticity(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    auto g = hm_solve(c, {-0.25, 0.25}, -1.5);
    double wb = 0.0;
    double wa = 0.0;
    double wa1 = 0.0;
    for (int i = 0; i <= 30; ++i) {
        double S = -1.5 + 0.25 * i;
        ComplexMatrix b = g->beta(S);
        ComplexMatrix al = alpha1(*g, S);
        wb = std::max(wb, max_abs_diff(b, b.adjoint()));
        wa = std::max(wa, max_abs_diff(al, -al.adjoint()));
        ComplexMatrix a1 = p34_state(*g, S).a1;
        wa1 = std::max(wa1, max_abs_diff(a1, -a1.adjoint()));
    }
    double w = std::max({wb, wa, wa1});
    return bound("max Hermiticity defect of beta, alpha1, a1", w, 1e-9);
}

Outcome check_seam(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    std::vector<double> delta{-0.25, 0.25};
    auto base = hm_solve(c, delta, 1.0);
    double s0 = base->s_tail();
    auto tail = hm_tail_picard(c, delta, s0 + 1.0, s0 + 9.0);
    auto g = hm_continue(c, delta, tail, s0);
    return bound("|beta(S0) difference|", max_abs_diff(g->beta(s0), base->beta(s0)), 1e-9);
}

Outcome check_zero_curvature_p2(std::uint64_t) {
    std::vector<cplx> ls{0.0, 1.0, I1, cplx(2.0, -1.0)};
    auto g1 = hm_solve(CouplingMatrix::scalar(1.0), {0.0}, -1.0);
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    auto g2 = hm_solve(c, {-0.25, 0.25}, -1.0);
    double w = 0.0;
    for (double S : {-0.5, 0.5, 1.5, 3.0}) {
        w = std::max(w, zero_curvature_residual_p2(*g1, S, ls));
        w = std::max(w, zero_curvature_residual_p2(*g2, S, ls));
    }
    return bound("max zero-curvature residual", w, 1e-7);
}

Outcome check_lax_identities(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    auto g = hm_solve(c, {-0.25, 0.25}, 0.0);
    LaxPair lp = lax_matrices(*g, 0.5);
    double w = 0.0;
    for (cplx l : {cplx(1.0), cplx(0.3, -0.7)}) {
        ComplexMatrix sum(4, 4);
        for (std::size_t j = 0; j < 2; ++j) sum += lp.Uj(j, l);
        w = std::max(w, max_abs_diff(sum, lp.UD(l)));
    }
    w = std::max(w, max_abs_diff(lp.a2, (0.5 * I1) * tensor(ComplexMatrix::identity(2), pauli().s3)));
    return bound("|sum U_j - U_D| and A_2 defect", w, 1e-14);
}

Outcome check_p34(std::uint64_t) {
    double r3 = 0.0;
    double r2 = 0.0;
    double r4 = 0.0;
    double a2 = 0.0;
    auto g1 = hm_solve(CouplingMatrix::scalar(1.0), {0.0}, -0.5);
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    auto g2 = hm_solve(c, {-0.25, 0.25}, -0.5);
    for (int i = 0; i <= 16; ++i) {
        double S = 0.25 * i;
        P34Residual a = p34_residual(*g1, S);
        P34Residual b = p34_residual(*g2, S);
        r3 = std::max({r3, a.res3, b.res3});
        r2 = std::max({r2, a.res2, b.res2});
        r4 = std::max({r4, a.res4, b.res4});
        a2 = std::max(a2, a.a2_term);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "res3 %.2e, res2 %.2e, res4 %.2e, r=1 a2 term %.2e", r3, r2, r4, a2);
    return {r3 <= 1e-5 && r2 <= 1e-6 && r4 <= 1e-4 && a2 <= 1e-12, buf};
}

Outcome check_zero_curvature_p34(std::uint64_t) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    auto g = hm_solve(c, {-0.25, 0.25}, -0.5);
    double a = zero_curvature_residual_p34(*g, 0.5, default_lambda_samples(), g->step());
    double b = zero_curvature_residual_p34(*g, 0.5, default_lambda_samples(), 0.5 * g->step());
    double ratio = a / b;
    return {a <= 1e-4 && ratio > 3.0 && ratio < 5.0, fmt2("residual %.3e, halving ratio %.2f", a, ratio)};
}

Outcome check_routes(std::uint64_t) {
    double worst = 0.0;
    for (const Case& cs : case_matrix()) {
        auto g = hm_solve(cs.c, cs.delta, 0.0);
        for (double S : {0.0, 1.0}) {
            ShiftVector s = shifts_at(S, cs.delta);
            cplx n2 = det_airy_sq_nystrom(s, cs.c).value;
            worst = std::max(worst, std::abs(n2 - det_airy_sq_painleve(*g, S)) / std::abs(n2));
            for (int sign : {-1, 1}) {
                cplx n1 = det_airy_nystrom(s, cs.c, sign).value;
                worst = std::max(worst, std::abs(n1 - det_airy_painleve(*g, S, sign)) / std::abs(n1));
            }
        }
    }
    return bound("max relative route difference", worst, 1e-6);
}

Outcome check_tau(std::uint64_t) {
    double worst = 0.0;
    for (const Case& cs : case_matrix()) {
        auto g = hm_solve(cs.c, cs.delta, -0.5);
        worst = std::max(worst, tau_derivatives(*g, 0.0).max_rel_error());
    }
    return bound("max relative tau-derivative error", worst, 1e-4);
}

Outcome check_miura(std::uint64_t) {
    double worst = 0.0;
    double rem = 0.0;
    bool branch_ok = true;
    for (double c : {1.0, 0.5})
        for (double s : {0.0, 0.5}) {
            MiuraResult m = miura_residual(c, s, 1e-2);
            worst = std::max(worst, m.residual);
            rem = std::max(rem, m.rem_residual);
            branch_ok = branch_ok && m.rem_branch == -1;
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "Miura residual %.3e, u = -v^2 - v' residual %.3e", worst, rem);
    return {worst <= 1e-4 && rem <= 1e-3 && branch_ok, buf};
}

Outcome check_total_positivity(std::uint64_t seed) {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.7, 0.4, 0.4, 0.5}));
    ShiftVector s({-0.3, 0.4});
    TPResult tp = total_positivity_check(s, c, 4, 100, seed);
    TPPoint a{0, -1.0};
    TPPoint b{1, 0.5};
    double lhs = tp_minor(s, c, {a, b});
    double rhs = de_bruijn_two_point(s, c, a, b);
    double rel = std::abs(lhs - rhs) / std::abs(lhs);
    return {tp.pass() && rel <= 1e-4, fmt2("min minor %.3e, de Bruijn relative error %.2e", tp.min_det, rel)};
}

Outcome check_existence(std::uint64_t) {
    ScanResult one = existence_scan(CouplingMatrix::scalar(1.0), -4.0, 2.0);
    bool in_range = true;
    for (const auto& [s, d] : one.samples) in_range = in_range && d > 0.0 && d <= 1.0;
    ScanResult big = existence_scan(CouplingMatrix::scalar(1.2), -4.0, 2.0);
    if (one.crossing || !in_range || !big.crossing) return {false, "scan pattern wrong"};
    double pole = 0.0;
    try {
        hm_solve(CouplingMatrix::scalar(1.2), {0.0}, -4.0);
        return {false, "no pole found for c = 1.2"};
    } catch (const PoleEncountered& e) {
        pole = e.pole_at();
    }
    double gap = std::abs(pole - *big.crossing);
    return {gap <= 0.1, fmt2("crossing at %.4f, pole at %.4f", *big.crossing, pole)};
}

Outcome check_scalar_chain(std::uint64_t) {
    ScalarChain ch(-2.5);
    double f2e = 0.0;
    double tw3 = 0.0;
    double alt = 0.0;
    double p34 = 0.0;
    for (double x : {-2.0, 0.0, 2.0}) {
        double ny = det_airy_sq_nystrom(ShiftVector({0.5 * x}), CouplingMatrix::scalar(1.0)).value.real();
        f2e = std::max(f2e, std::abs(ch.f2(x) - ny));
        double f1 = ch.f1(x);
        tw3 = std::max(tw3, std::abs(f1 * f1 * std::exp(ch.integral_u(x)) - ch.f2(x)));
        alt = std::max(alt, std::abs(ch.f1_alt(x) / f1 - 1.0));
    }
    for (int i = 0; i <= 20; ++i) p34 = std::max(p34, ch.p34_residual(-2.0 + 0.2 * i, 4e-3));
    char buf[200];
    std::snprintf(buf, sizeof buf, "F2 %.2e, TW3 %.2e, F1 alt %.2e, P34 %.2e", f2e, tw3, alt, p34);
    return {f2e <= 1e-6 && tw3 <= 1e-6 && alt <= 1e-5 && p34 <= 1e-4, buf};
}

Outcome check_simd(std::uint64_t seed) {
#if defined(NCAIRY_HAVE_AVX2)
    if (!simd::backend_available(simd::Backend::avx2)) return {true, "AVX2 not available; scalar only"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool same = true;
    double dot_err = 0.0;
    for (std::size_t n : {1u, 3u, 8u, 17u, 64u, 131u}) {
        std::vector<cplx> x(n), y(n);
        std::vector<double> p(n), q(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = cplx(u(rng), u(rng));
            y[i] = cplx(u(rng), u(rng));
            p[i] = u(rng);
            q[i] = u(rng);
        }
        cplx a(u(rng), u(rng));
        std::vector<cplx> y1 = y;
        std::vector<cplx> y2 = y;
        simd::scalar::csub_scaled(n, a, x.data(), y1.data());
        simd::avx2::csub_scaled(n, a, x.data(), y2.data());
        same = same && y1 == y2;
        double d1 = simd::scalar::dot(n, p.data(), q.data());
        double d2 = simd::avx2::dot(n, p.data(), q.data());
        dot_err = std::max(dot_err, std::abs(d1 - d2));
    }
    return {same && dot_err <= 1e-13, fmt("axpy bitwise equal, dot difference %.2e", dot_err)};
#else
    (void)seed;
    return {true, "scalar only build"};
#endif
}

std::vector<NamedCheck> build_checks() {
    std::vector<std::pair<std::string, Outcome (*)(std::uint64_t)>> list = {
        {"airy.wronskian", check_wronskian},
        {"airy.ode_residual", check_airy_ode},
        {"airy.scaled_consistency", check_scaled},
        {"airy.seam_continuity", check_seams},
        {"kernels.sq_kernel_quadrature", check_sq_kernel},
        {"kernels.scalar_kernel_quadrature", check_scalar_kernel},
        {"kernels.hermitean_symmetry", check_hermitean_kernels},
        {"fredholm.gauss_legendre", check_gauss_legendre},
        {"fredholm.rank_one", check_rank_one},
        {"fredholm.factorization", check_factorization},
        {"fredholm.contour_equivalence", check_contour},
        {"fredholm.weight_splitting", check_weight_splitting},
        {"fredholm.refinement", check_refinement},
        {"fredholm.spectral_radius", check_spectral_radius},
        {"simd.equivalence", check_simd},
        {"ncp2.residual", check_ncp2_residual},
        {"ncp2.asymptotic_matching", check_asymptotics},
        {"ncp2.parity", check_parity},
        {"ncp2.hermiticity", check_hermiticity},
        {"ncp2.picard_seam", check_seam},
        {"ncp2.zero_curvature", check_zero_curvature_p2},
        {"ncp2.lax_identities", check_lax_identities},
        {"ncp34.residuals", check_p34},
        {"ncp34.zero_curvature", check_zero_curvature_p34},
        {"tw.route_agreement", check_routes},
        {"tw.tau_derivatives", check_tau},
        {"tw.miura", check_miura},
        {"tw.total_positivity", check_total_positivity},
        {"tw.existence", check_existence},
        {"tw.scalar_chain", check_scalar_chain},
    };
    std::vector<NamedCheck> out;
    for (const auto& [name, fn] : list) {
        out.push_back({name, [name, fn](std::uint64_t seed) {
                           CheckResult r;
                           r.name = name;
                           auto t0 = std::chrono::steady_clock::now();
                           try {
                               Outcome o = fn(seed);
                               r.pass = o.pass;
                               r.detail = o.detail;
                           } catch (const std::exception& e) {
                               r.pass = false;
                               r.detail = std::string("error: ") + e.what();
                           }
                           r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                           return r;
                       }});
    }
    return out;
}

} // namespace

const std::vector<NamedCheck>& verify_checks() {
    static const std::vector<NamedCheck> checks = build_checks();
    return checks;
}

std::vector<CheckResult> run_verify(std::uint64_t seed, std::ostream& report, const std::string& filter) {
    std::vector<CheckResult> out;
    for (const NamedCheck& c : verify_checks()) {
        if (!filter.empty() && c.name.rfind(filter, 0) != 0) continue;
        CheckResult r = c.run(seed);
        report << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace ncairy
