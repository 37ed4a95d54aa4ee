#include "ncairy/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/simd.hpp"

namespace ncairy {

cplx LuDeterminant::value() const {
    if (singular) return 0.0;
    return std::exp(log_abs) * phase;
}

LuDeterminant lu_determinant(std::vector<cplx>& a, std::size_t n) {
    LuDeterminant out;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(a[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            out.singular = true;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.phase = 0.0;
            return out;
        }
        if (piv != k) {
            std::swap_ranges(a.begin() + k * n, a.begin() + (k + 1) * n, a.begin() + piv * n);
            out.phase = -out.phase;
        }
        cplx pivot = a[k * n + k];
        out.log_abs += std::log(best);
        out.phase *= pivot / best;
        const cplx* row_k = a.data() + k * n + k + 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx l = a[i * n + k] / pivot;
            if (l == cplx(0.0)) continue;
            simd::csub_scaled(n - k - 1, l, row_k, a.data() + i * n + k + 1);
        }
        // keep the phase on the unit circle
        out.phase /= std::abs(out.phase);
    }
    return out;
}

void BlockKernel::fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const {
    std::size_t r = dim();
    std::size_t m = nodes.size();
    std::size_t n = m * r;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l) {
            ComplexMatrix blk = (*this)(nodes[i], nodes[l]);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) dense[(i * r + j) * n + l * r + k] = blk(j, k);
        }
}

void MatrixAiryKernel::fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const {
    std::size_t r = dim();
    std::size_t m = nodes.size();
    std::size_t n = m * r;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = i; l < m; ++l)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) {
                    cplx cjk = c_(j, k);
                    cplx v = 0.0;
                    if (cjk != cplx(0.0)) v = cjk * airy_ai(nodes[i] + nodes[l] + s_[j] + s_[k]).ai;
                    dense[(i * r + j) * n + l * r + k] = v;
                    dense[(l * r + j) * n + i * r + k] = v;
                }
}

void MatrixAirySqKernel::fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const {
    std::size_t r = dim();
    std::size_t m = nodes.size();
    std::size_t n = m * r;
    // Ai, Ai' at x_i + s_j + s_k
    std::vector<AiryPair> tab(m * r * r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) tab[(i * r + j) * r + k] = airy_ai(nodes[i] + s_[j] + s_[k]);
    std::fill(dense.begin(), dense.end(), cplx(0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t k = 0; k < r; ++k)
                for (std::size_t j1 = 0; j1 < r; ++j1) {
                    cplx c1 = c_(j1, k);
                    if (c1 == cplx(0.0)) continue;
                    const AiryPair& pa = tab[(i * r + j1) * r + k];
                    double a = nodes[i] + s_[j1] + s_[k];
                    for (std::size_t j2 = 0; j2 < r; ++j2) {
                        cplx c2 = c_(k, j2);
                        if (c2 == cplx(0.0)) continue;
                        const AiryPair& pb = tab[(l * r + j2) * r + k];
                        double b = nodes[l] + s_[j2] + s_[k];
                        dense[(i * r + j1) * n + l * r + j2] +=
                            c1 * c2 * airy_kernel_from_values(a, pa.ai, pa.aip, b, pb.ai, pb.aip);
                    }
                }
}

double default_cutoff(const ShiftVector& s) { return 40.0 + 2.0 * std::max(0.0, -2.0 * s.min_value()); }

namespace {

struct Span {
    double a;
    double b;
};

Span rule_span(const QuadratureRule& rule) {
    if (const auto* h = std::get_if<HalfLine>(&rule.domain)) return {0.0, h->cutoff};
    if (const auto* iv = std::get_if<Interval>(&rule.domain)) return {iv->a, iv->b};
    throw DomainError("nystrom_det: contour rules are handled by nystrom_det_contour");
}

QuadratureRule regenerate(const QuadratureRule& rule, int m) {
    Span sp = rule_span(rule);
    QuadratureRule out = gauss_legendre(m, sp.a, sp.b);
    out.domain = rule.domain;
    return out;
}

DetResult det_symmetric(const BlockKernel& kernel, cplx z, const QuadratureRule& rule) {
    std::size_t r = kernel.dim();
    std::size_t m = rule.size();
    std::size_t n = m * r;
    std::vector<cplx> a(n * n);
    kernel.fill(rule.nodes, a);
    std::vector<double> sw(m);
    for (std::size_t i = 0; i < m; ++i) sw[i] = std::sqrt(rule.weights[i]);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            cplx& v = a[p * n + q];
            v = z * (sw[p / r] * v * sw[q / r]);
            if (p == q) v += 1.0;
        }
    LuDeterminant lu = lu_determinant(a, n);
    DetResult res;
    res.value = lu.value();
    res.log_abs = lu.log_abs;
    res.nodes_used = static_cast<int>(m);
    return res;
}

double level_difference(const DetResult& a, const DetResult& b, bool absolute) {
    double dv = std::abs(a.value - b.value);
    if (absolute) return dv;
    if (a.value == cplx(0.0) || b.value == cplx(0.0)) return dv == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(std::log(a.value / b.value));
}

template <typename Eval>
DetResult refine_loop(Eval eval, int m0, const NystromOptions& opts, const char* who) {
    DetResult prev = eval(m0);
    if (!opts.refine) {
        prev.converged = false;
        prev.est_error = std::numeric_limits<double>::infinity();
        return prev;
    }
    for (int m = 2 * m0; m <= opts.max_nodes; m *= 2) {
        DetResult cur = eval(m);
        cur.est_error = level_difference(cur, prev, opts.absolute_error);
        cur.converged = cur.est_error <= opts.tol;
        if (cur.converged) return cur;
        prev = cur;
    }
    if (opts.throw_on_cap) throw ConvergenceFailure(std::string(who) + ": node cap reached before convergence");
    return prev;
}

} // namespace

DetResult nystrom_det(const BlockKernel& kernel, cplx z, const QuadratureRule& rule, const NystromOptions& opts) {
    if (rule.size() == 0) throw DomainError("nystrom_det: empty quadrature rule");
    int m0 = static_cast<int>(rule.size());
    auto eval = [&](int m) { return det_symmetric(kernel, z, m == m0 ? rule : regenerate(rule, m)); };
    return refine_loop(eval, m0, opts, "nystrom_det");
}

DetResult nystrom_det_one_sided(const BlockKernel& kernel, cplx z, const QuadratureRule& rule) {
    std::size_t r = kernel.dim();
    std::size_t m = rule.size();
    std::size_t n = m * r;
    std::vector<cplx> a(n * n);
    kernel.fill(rule.nodes, a);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            cplx& v = a[p * n + q];
            v = z * (v * rule.weights[q / r]);
            if (p == q) v += 1.0;
        }
    LuDeterminant lu = lu_determinant(a, n);
    DetResult res;
    res.value = lu.value();
    res.log_abs = lu.log_abs;
    res.nodes_used = static_cast<int>(m);
    res.converged = false;
    return res;
}

namespace {

constexpr double kContourBase = 0.5;

double max_theta_real(cplx lambda, const ShiftVector& s) {
    const cplx i(0.0, 1.0);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s.size(); ++j) {
        cplx th = i * lambda * lambda * lambda / 6.0 + i * s[j] * lambda;
        best = std::max(best, th.real());
    }
    return best;
}

bool radius_ok(const ShiftVector& s, double radius) {
    const cplx base(0.0, kContourBase);
    cplx left = base + radius * std::polar(1.0, 5.0 * std::numbers::pi / 6.0);
    cplx right = base + radius * std::polar(1.0, std::numbers::pi / 6.0);
    return max_theta_real(left, s) < -25.0 && max_theta_real(right, s) < -25.0;
}

DetResult det_contour(const ShiftVector& s, const CouplingMatrix& c, cplx z, int m, double radius) {
    std::size_t r = s.size();
    QuadratureRule gl = gauss_legendre(m, 0.0, 1.0);
    const cplx base(0.0, kContourBase);
    const cplx dir_left = std::polar(1.0, 5.0 * std::numbers::pi / 6.0);
    const cplx dir_right = std::polar(1.0, std::numbers::pi / 6.0);
    std::size_t nodes = 2 * static_cast<std::size_t>(m);
    std::vector<cplx> lam(nodes), dl(nodes);
    for (int i = 0; i < m; ++i) {
        double t = gl.nodes[i];
        double w = gl.weights[i];
        // left ray runs towards the base point, right ray away from it
        lam[i] = base + radius * dir_left * (1.0 - t);
        dl[i] = -radius * dir_left * w;
        lam[m + i] = base + radius * dir_right * t;
        dl[m + i] = radius * dir_right * w;
    }
    // e^{theta_k} at each node and shift
    const cplx iu(0.0, 1.0);
    std::vector<cplx> ex(nodes * r);
    for (std::size_t p = 0; p < nodes; ++p)
        for (std::size_t k = 0; k < r; ++k) {
            cplx th = iu * lam[p] * lam[p] * lam[p] / 6.0 + iu * s[k] * lam[p];
            if (th.real() > 700.0) throw OverflowRisk("contour_symbol: exponent real part above 700");
            ex[p * r + k] = std::exp(th);
        }
    const cplx pref = -1.0 / (2.0 * iu * std::numbers::pi);
    std::size_t n = nodes * r;
    std::vector<cplx> a(n * n);
    for (std::size_t p = 0; p < nodes; ++p)
        for (std::size_t q = 0; q < nodes; ++q) {
            cplx sum = lam[p] + lam[q];
            if (std::abs(sum) < 1e-14) throw DivisionByZero("contour_kernel: lambda + mu vanishes");
            cplx f = z * pref / sum * dl[q];
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t k = 0; k < r; ++k) {
                    cplx v = f * c(k, j) * ex[p * r + k] * ex[q * r + k];
                    if (p == q && j == k) v += 1.0;
                    a[(p * r + j) * n + q * r + k] = v;
                }
        }
    LuDeterminant lu = lu_determinant(a, n);
    DetResult res;
    res.value = lu.value();
    res.log_abs = lu.log_abs;
    res.nodes_used = m;
    return res;
}

} // namespace

double default_contour_radius(const ShiftVector& s) {
    double radius = 8.0;
    while (!radius_ok(s, radius)) {
        radius += 1.0;
        if (radius > 64.0) throw DomainError("contour: no admissible radius for these shifts");
    }
    return radius;
}

DetResult nystrom_det_contour(const ShiftVector& s, const CouplingMatrix& c, cplx z, int m_per_ray, double radius,
                              const NystromOptions& opts) {
    if (c.size() != s.size()) throw DomainError("nystrom_det_contour: C and s sizes differ");
    if (radius <= 0.0) radius = default_contour_radius(s);
    if (!radius_ok(s, radius)) throw DomainError("nystrom_det_contour: radius too small for the symbol to decay");
    auto eval = [&](int m) { return det_contour(s, c, z, m, radius); };
    return refine_loop(eval, m_per_ray, opts, "nystrom_det_contour");
}

double spectral_radius(const BlockKernel& kernel, const QuadratureRule& rule) {
    std::size_t r = kernel.dim();
    std::size_t m = rule.size();
    std::size_t n = m * r;
    std::vector<cplx> dense(n * n);
    kernel.fill(rule.nodes, dense);
    std::vector<double> b(n * n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            b[p * n + q] = std::sqrt(rule.weights[p / r]) * dense[p * n + q].real() * std::sqrt(rule.weights[q / r]);
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        for (std::size_t p = 0; p < n; ++p) y[p] = simd::dot(n, b.data() + p * n, x.data());
        double ray = simd::dot(n, x.data(), y.data());
        double norm = std::sqrt(simd::dot(n, y.data(), y.data()));
        if (norm == 0.0) return 0.0;
        for (std::size_t p = 0; p < n; ++p) x[p] = y[p] / norm;
        if (it > 0 && std::abs(ray - lambda) <= 1e-8 * std::abs(ray)) return std::abs(ray);
        lambda = ray;
    }
    throw ConvergenceFailure("spectral_radius: power iteration did not converge");
}

} // namespace ncairy
