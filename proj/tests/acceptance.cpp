// Acceptance suite: one PASS/FAIL line per criterion, each with a measured
// wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ncairy/airy.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/ncp2.hpp"
#include "ncairy/ncp34.hpp"
#include "ncairy/quadrature.hpp"
#include "ncairy/tw.hpp"

using namespace ncairy;

namespace {

const cplx kI(0.0, 1.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[320];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

CouplingMatrix scaled(ComplexMatrix m, double sigma) {
    m *= sigma / largest_singular_value(m);
    return CouplingMatrix(m);
}

struct Case {
    std::string label;
    CouplingMatrix c;
    std::vector<double> delta;
};

// {r = 1, 2} x {0.8 I, dense Hermitean with sigma_max 1, real nonsymmetric
// with sigma_max 0.9}.
std::vector<Case> cases() {
    return {
        {"r1 0.8I", CouplingMatrix::scalar(0.8), {0.0}},
        {"r1 herm", CouplingMatrix::scalar(1.0), {0.0}},
        {"r1 real", CouplingMatrix::scalar(-0.9), {0.0}},
        {"r2 0.8I", CouplingMatrix(ComplexMatrix(2, 2, {0.8, 0.0, 0.0, 0.8})), {-0.25, 0.25}},
        {"r2 herm", scaled(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}), 1.0), {-0.3, 0.3}},
        {"r2 real", scaled(ComplexMatrix(2, 2, {0.5, 0.4, -0.3, 0.6}), 0.9), {-0.25, 0.25}},
    };
}

Outcome cross_route_agreement() {
    double worst = 0.0;
    std::string where;
    for (const Case& cs : cases()) {
        auto g = hm_solve(cs.c, cs.delta, 0.0);
        for (double S : {0.0, 1.0}) {
            ShiftVector s = ShiftVector::from_center(S, cs.delta);
            auto track = [&](cplx ny, cplx pv, const char* kind) {
                double rel = std::abs(ny - pv) / std::abs(ny);
                if (rel > worst) {
                    worst = rel;
                    where = fmt("%s S=%g %s", cs.label.c_str(), S, kind);
                }
            };
            track(det_airy_sq_nystrom(s, cs.c).value, det_airy_sq_painleve(*g, S), "Id-Ai^2");
            track(det_airy_nystrom(s, cs.c, -1).value, det_airy_painleve(*g, S, -1), "Id-Ai");
            track(det_airy_nystrom(s, cs.c, 1).value, det_airy_painleve(*g, S, 1), "Id+Ai");
        }
    }
    return {worst <= 1e-6, fmt("max relative difference %.3e at %s (limit 1e-6)", worst, where.c_str())};
}

Outcome factorization() {
    double worst = 0.0;
    for (const Case& cs : cases())
        for (double S : {0.0, 1.0}) {
            ShiftVector s = ShiftVector::from_center(S, cs.delta);
            cplx sq = det_airy_sq_nystrom(s, cs.c).value;
            cplx m = det_airy_nystrom(s, cs.c, -1).value;
            cplx p = det_airy_nystrom(s, cs.c, 1).value;
            worst = std::max(worst, std::abs(m * p - sq) / std::abs(sq));
        }
    return {worst <= 1e-8, fmt("max relative error %.3e (limit 1e-8)", worst)};
}

Outcome contour_equivalence() {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> shift(-0.5, 1.5);
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
        std::size_t r = t < 2 ? 1 : 2;
        ComplexMatrix m(r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) m(j, k) = cplx(u(rng), t == 4 ? u(rng) : 0.0);
        CouplingMatrix c = scaled(m, 0.5 + 0.4 * std::abs(u(rng)));
        std::vector<double> sv(r);
        for (double& v : sv) v = shift(rng);
        ShiftVector s(sv);
        int sign = t % 2 ? 1 : -1;
        cplx half = det_airy_nystrom(s, c, sign).value;
        cplx cont = nystrom_det_contour(s, c, static_cast<double>(sign)).value;
        worst = std::max(worst, std::abs(half - cont));
    }
    return {worst <= 1e-6, fmt("max |contour - half-line| %.3e over 5 cases (limit 1e-6)", worst)};
}

double max_residual_on(const HMGrid& g, double lo, double hi) {
    double worst = 0.0;
    for (double S : g.s_values())
        if (S >= lo + 2.0 * g.step() && S <= hi) worst = std::max(worst, ncp2_residual(g, S));
    for (double S : g.tail().nodes())
        if (S > g.s_tail() && S <= hi) worst = std::max(worst, ncp2_residual(g, S));
    return worst;
}

Outcome ncp2_residual_and_order() {
    double worst = 0.0;
    for (const Case& cs : cases()) worst = std::max(worst, max_residual_on(*hm_solve(cs.c, cs.delta, -1.5), -1.5, 6.0));
    // Self-convergence of beta at fixed points under h -> h/2 -> h/4.
    double min_ratio = 1e300;
    double max_ratio = 0.0;
    for (std::size_t i : {1u, 4u}) {
        const Case cs = cases()[i];
        std::shared_ptr<const HMGrid> g[3];
        double h = 1e-2;
        for (auto& gi : g) {
            HMOptions o;
            o.step = h;
            gi = hm_solve(cs.c, cs.delta, -1.5, o);
            h *= 0.5;
        }
        for (double S : {-1.5, 0.0, 1.0}) {
            double e1 = max_abs_diff(g[0]->beta(S), g[1]->beta(S));
            double e2 = max_abs_diff(g[1]->beta(S), g[2]->beta(S));
            min_ratio = std::min(min_ratio, e1 / e2);
            max_ratio = std::max(max_ratio, e1 / e2);
        }
    }
    bool order = min_ratio >= 12.0 && max_ratio <= 20.0;
    return {worst <= 1e-6 && order,
            fmt("max residual %.3e (limit 1e-6); halving ratios in [%.2f, %.2f] (O(h^4) expects 16)", worst,
                min_ratio, max_ratio)};
}

double airy_ai_value(double x) { return airy_ai(x).ai; }

Outcome asymptotic_matching() {
    const double S = 5.0;
    double worst_ratio = 0.0;
    struct A {
        CouplingMatrix c;
        std::vector<double> delta;
    };
    std::vector<A> list{
        {CouplingMatrix::scalar(1.0), {0.0}},
        {scaled(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}), 1.0), {-0.5, 0.5}},
        {scaled(ComplexMatrix(2, 2, {0.5, 0.4, -0.3, 0.6}), 0.9), {-0.2, 0.2}},
    };
    for (const A& a : list) {
        auto g = hm_solve(a.c, a.delta, S);
        double m = 0.0;
        for (double d : a.delta) m = std::max(m, std::abs(d));
        double limit = 10.0 * std::sqrt(S) * std::exp(-(4.0 / 3.0) * std::pow(2.0 * S - 2.0 * m, 1.5));
        ComplexMatrix b = g->beta(S);
        for (std::size_t k = 0; k < a.delta.size(); ++k)
            for (std::size_t l = 0; l < a.delta.size(); ++l) {
                double err = std::abs(b(k, l) + a.c(k, l) * airy_ai_value(2.0 * S + a.delta[k] + a.delta[l]));
                worst_ratio = std::max(worst_ratio, err / limit);
            }
    }
    return {worst_ratio <= 1.0, fmt("max error / bound %.3e", worst_ratio)};
}

Outcome zero_curvature() {
    std::vector<cplx> ls{0.0, 1.0, kI, cplx(2.0, -1.0), cplx(-0.5, 0.3)};
    double p2 = 0.0;
    double p34 = 0.0;
    double lo = 1e300;
    double hi = 0.0;
    for (std::size_t i : {1u, 4u, 5u}) {
        const Case cs = cases()[i];
        auto g = hm_solve(cs.c, cs.delta, -1.0);
        for (double S : {-0.5, 0.5, 1.5, 3.0}) p2 = std::max(p2, zero_curvature_residual_p2(*g, S, ls));
        for (double S : {0.0, 1.0}) {
            double a = zero_curvature_residual_p34(*g, S, default_lambda_samples(), g->step());
            double b = zero_curvature_residual_p34(*g, S, default_lambda_samples(), 0.5 * g->step());
            p34 = std::max(p34, a);
            lo = std::min(lo, a / b);
            hi = std::max(hi, a / b);
        }
    }
    bool order = lo >= 3.0 && hi <= 5.0;
    return {p2 <= 1e-7 && p34 <= 1e-4 && order,
            fmt("PII %.3e (limit 1e-7), PXXXIV %.3e (limit 1e-4), halving ratios [%.2f, %.2f]", p2, p34, lo, hi)};
}

Outcome p34_residuals() {
    double r3 = 0.0;
    double r2 = 0.0;
    double r4 = 0.0;
    double a2 = 0.0;
    for (const Case& cs : cases()) {
        auto g = hm_solve(cs.c, cs.delta, -0.5);
        for (int i = 0; i <= 40; ++i) {
            P34Residual res = p34_residual(*g, 0.1 * i);
            r3 = std::max(r3, res.res3);
            r2 = std::max(r2, res.res2);
            r4 = std::max(r4, res.res4);
            if (cs.delta.size() == 1) a2 = std::max(a2, res.a2_term);
        }
    }
    return {r3 <= 1e-5 && r2 <= 1e-6 && r4 <= 1e-4 && a2 <= 1e-12,
            fmt("res3 %.2e, res2 %.2e, res4 %.2e, r=1 a2 term %.2e", r3, r2, r4, a2)};
}

Outcome miura() {
    double worst = 0.0;
    double lo = 1e300;
    double hi = 0.0;
    bool branch = true;
    for (double s : {0.0, 0.5}) {
        MiuraResult a = miura_residual(1.0, s, 1e-2);
        MiuraResult b = miura_residual(1.0, s, 5e-3);
        worst = std::max(worst, a.residual);
        lo = std::min(lo, a.residual / b.residual);
        hi = std::max(hi, a.residual / b.residual);
        branch = branch && a.rem_branch == -1 && b.rem_branch == -1;
    }
    bool order = lo >= 3.0 && hi <= 5.0;
    return {worst <= 1e-4 && order && branch,
            fmt("residual %.3e at h = 1e-2 (limit 1e-4), halving ratios [%.2f, %.2f]", worst, lo, hi)};
}

Outcome tau_identities() {
    double worst = 0.0;
    for (const Case& cs : cases()) {
        auto g = hm_solve(cs.c, cs.delta, -0.5);
        for (double S : {0.0, 1.0}) worst = std::max(worst, tau_derivatives(*g, S).max_rel_error());
    }
    return {worst <= 1e-4, fmt("max relative error %.3e (limit 1e-4)", worst)};
}

Outcome existence() {
    ScanResult one = existence_scan(CouplingMatrix::scalar(1.0), -4.0, 2.0);
    bool in_range = true;
    for (const auto& [s, d] : one.samples) in_range = in_range && d > 0.0 && d <= 1.0;
    ScanResult big = existence_scan(CouplingMatrix::scalar(1.2), -4.0, 2.0);
    if (one.crossing) return {false, fmt("c = 1 crossing at %.4f", *one.crossing)};
    if (!in_range) return {false, "c = 1 values outside (0, 1]"};
    if (!big.crossing) return {false, "c = 1.2 has no crossing"};
    double pole = 0.0;
    try {
        hm_solve(CouplingMatrix::scalar(1.2), {0.0}, -4.0);
        return {false, "c = 1.2 solution has no pole"};
    } catch (const PoleEncountered& e) {
        pole = e.pole_at();
    }
    double gap = std::abs(pole - *big.crossing);
    return {gap <= 0.1, fmt("c = 1 positive on [-4, 2]; c = 1.2 crossing %.4f, pole %.4f", *big.crossing, pole)};
}

// Ai^2 kernel entry by direct quadrature of sum_k c_jk c_kl Ai(x+s_j+s_k+z) Ai(y+s_l+s_k+z).
double sq_kernel_oracle(const TPPoint& a, const TPPoint& b, const ShiftVector& s, const CouplingMatrix& c) {
    static const QuadratureRule q = gauss_legendre(240, 0.0, 30.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double coef = (c(a.level, k) * c(k, b.level)).real();
        double acc = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            acc += q.weights[i] * airy_ai_value(a.x + s[a.level] + s[k] + q.nodes[i]) *
                   airy_ai_value(b.x + s[b.level] + s[k] + q.nodes[i]);
        sum += coef * acc;
    }
    return sum;
}

Outcome total_positivity() {
    CouplingMatrix c = scaled(ComplexMatrix(2, 2, {0.7, 0.4, 0.4, 0.5}), 0.95);
    ShiftVector s({-0.3, 0.4});
    TPResult tp = total_positivity_check(s, c, 4, 100, 11);
    TPPoint a{0, -1.0};
    TPPoint b{1, 0.5};
    double minor = sq_kernel_oracle(a, a, s, c) * sq_kernel_oracle(b, b, s, c) -
                   sq_kernel_oracle(a, b, s, c) * sq_kernel_oracle(b, a, s, c);
    double db = de_bruijn_two_point(s, c, a, b);
    double rel = std::abs(db - minor) / std::abs(minor);
    return {tp.pass() && tp.trials == 100 && rel <= 1e-4,
            fmt("min minor %.3e over %d sets; de Bruijn relative error %.2e", tp.min_det, tp.trials, rel)};
}

Outcome scalar_chain() {
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
        alt = std::max(alt, std::abs(ch.f1_alt(x) - f1));
    }
    for (int i = 0; i <= 40; ++i) p34 = std::max(p34, ch.p34_residual(-2.0 + 0.1 * i, 4e-3));
    return {f2e <= 1e-6 && tw3 <= 1e-6 && alt <= 1e-5 && p34 <= 1e-4,
            fmt("F2 vs Nystrom %.2e, F1^2 exp(int u) - F2 %.2e, alternative F1 %.2e, w residual %.2e", f2e, tw3,
                alt, p34)};
}

Outcome special_functions() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-30.0, 30.0);
    double wr = 0.0;
    for (int i = 0; i < 1000; ++i) {
        AiryEval e = airy_scaled(d(rng));
        double w = e.ai * e.bip - e.aip * e.bi;
        wr = std::max(wr, std::abs(w * std::numbers::pi - 1.0));
    }
    double seam = 0.0;
    for (double x : {-kAirySeriesLimit, kAirySeriesLimit}) {
        AiryEval a = airy_series_branch(x);
        AiryEval b = airy_asymptotic_branch(x);
        // Oscillatory side: compare against the local amplitude.
        double sv = x > 0 ? 0.0 : std::hypot(b.ai, b.bi);
        double sd = x > 0 ? 0.0 : std::hypot(b.aip, b.bip);
        auto rel = [&](double p, double q, double scale) { return std::abs(p - q) / std::max(std::abs(q), scale); };
        seam = std::max({seam, rel(a.ai, b.ai, sv), rel(a.bi, b.bi, sv), rel(a.aip, b.aip, sd), rel(a.bip, b.bip, sd)});
    }
    return {wr <= 1e-10 && seam <= 1e-11, fmt("Wronskian %.2e (limit 1e-10), seam %.2e (limit 1e-11)", wr, seam)};
}

struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    std::vector<Criterion> list{
        {1, "cross_route_agreement", 60, cross_route_agreement},
        {2, "factorization", 20, factorization},
        {3, "contour_equivalence", 30, contour_equivalence},
        {4, "ncp2_residual", 30, ncp2_residual_and_order},
        {5, "asymptotic_matching", 5, asymptotic_matching},
        {6, "zero_curvature", 20, zero_curvature},
        {7, "p34_residuals", 20, p34_residuals},
        {8, "miura", 30, miura},
        {9, "tau_identities", 40, tau_identities},
        {10, "existence_boundary", 60, existence},
        {11, "total_positivity", 30, total_positivity},
        {12, "scalar_chain", 60, scalar_chain},
        {13, "special_functions", 5, special_functions},
    };
    int failed = 0;
    for (const Criterion& c : list) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.budget;
        bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %2d %s: %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs, c.budget, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(list.size()) - failed, list.size());
    return failed == 0 ? 0 : 1;
}
