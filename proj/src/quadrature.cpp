#include "ncairy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ncairy/errors.hpp"

namespace ncairy {

namespace {

QuadratureRule compute_gauss_legendre(int m) {
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    rule.domain = Interval{-1.0, 1.0};
    int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                done = true;
                break;
            }
        }
        if (!done) throw ConvergenceFailure("gauss_legendre: Newton iteration did not converge");
        // recompute the derivative at the final node for the weight
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= m; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

} // namespace

QuadratureRule gauss_legendre(int m) {
    if (m < 2 || m > 512) throw DomainError("gauss_legendre: m must lie in [2, 512]");
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, compute_gauss_legendre(m)).first;
    return it->second;
}

QuadratureRule gauss_legendre(int m, double a, double b) {
    QuadratureRule rule = gauss_legendre(m);
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    rule.domain = Interval{a, b};
    return rule;
}

QuadratureRule half_line_rule(int m, double cutoff) {
    QuadratureRule rule = gauss_legendre(m, 0.0, cutoff);
    rule.domain = HalfLine{cutoff};
    return rule;
}

} // namespace ncairy
