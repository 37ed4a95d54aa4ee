#include <cmath>
#include <vector>

#include "doctest.h"
#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/tw.hpp"

using namespace ncairy;

namespace {

// Plain Gaussian elimination on a real matrix.
double real_det(std::vector<double> a, std::size_t n) {
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            det = -det;
        }
        det *= a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a[i * n + k] / a[k * n + k];
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return det;
}

// det(Id - K_Ai) on [s, s + 16] from the Christoffel-Darboux form.
double f2_oracle(double s) {
    const std::size_t n = 60;
    QuadratureRule q = gauss_legendre(static_cast<int>(n), s, s + 16.0);
    std::vector<double> ai(n), aip(n);
    for (std::size_t i = 0; i < n; ++i) {
        AiryPair p = airy_ai(q.nodes[i]);
        ai[i] = p.ai;
        aip[i] = p.aip;
    }
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double k = i == j ? aip[i] * aip[i] - q.nodes[i] * ai[i] * ai[i]
                              : (ai[i] * aip[j] - aip[i] * ai[j]) / (q.nodes[i] - q.nodes[j]);
            m[i * n + j] = (i == j ? 1.0 : 0.0) - std::sqrt(q.weights[i] * q.weights[j]) * k;
        }
    return real_det(m, n);
}

} // namespace

TEST_CASE("LU determinant of small matrices") {
    std::vector<cplx> a{2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0};
    CHECK(std::abs(lu_determinant(a, 3).value() - 18.0) < 1e-13);
    std::vector<cplx> b{0.0, 1.0, 1.0, 0.0};
    CHECK(std::abs(lu_determinant(b, 2).value() + 1.0) < 1e-15);
    std::vector<cplx> z{1.0, 2.0, 2.0, 4.0};
    LuDeterminant d = lu_determinant(z, 2);
    CHECK(d.singular);
    CHECK(d.value() == cplx(0.0));
    std::vector<cplx> big(40 * 40);
    for (std::size_t i = 0; i < 40; ++i) big[i * 40 + i] = 1e-20;
    LuDeterminant t = lu_determinant(big, 40);
    CHECK(t.log_abs == doctest::Approx(40 * std::log(1e-20)));
}

TEST_CASE("rank-one and rank-two separable kernels") {
    NystromOptions o;
    o.refine = false;
    FunctionKernel one(1, [](double x, double y) { return ComplexMatrix(1, 1, {std::exp(-x - y)}); });
    // det(Id + z f g^T) = 1 + z int f g
    for (cplx z : {cplx(1.0), cplx(-1.0), cplx(0.3, 2.0)})
        CHECK(std::abs(nystrom_det(one, z, half_line_rule(40, 40.0), o).value - (1.0 + 0.5 * z)) < 1e-12);
    // 2x2 block kernel diag(e^{-x-y}, 2 e^{-2x-2y}) on [0, inf)
    FunctionKernel two(2, [](double x, double y) {
        return ComplexMatrix(2, 2, {std::exp(-x - y), 0.0, 0.0, 2.0 * std::exp(-2.0 * x - 2.0 * y)});
    });
    CHECK(std::abs(nystrom_det(two, -1.0, half_line_rule(60, 40.0), o).value - 0.5 * 0.5) < 1e-12);
}

TEST_CASE("symmetric and one-sided weights give the same determinant") {
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, 0.2, -0.4, 0.5}));
    MatrixAiryKernel k(ShiftVector({0.1, 0.5}), c);
    NystromOptions o;
    o.refine = false;
    QuadratureRule rule = half_line_rule(50, 40.0);
    CHECK(std::abs(nystrom_det(k, -1.0, rule, o).value - nystrom_det_one_sided(k, -1.0, rule).value) < 1e-13);
}

TEST_CASE("scalar squared-kernel determinant matches an independent Christoffel-Darboux Nystrom") {
    for (double s : {-2.0, -0.5, 0.0, 1.5}) {
        CAPTURE(s);
        DetResult d = det_airy_sq_nystrom(ShiftVector({0.5 * s}), CouplingMatrix::scalar(1.0));
        CHECK(d.converged);
        CHECK(std::abs(d.value.real() - f2_oracle(s)) < 1e-11);
        CHECK(std::abs(d.value.imag()) < 1e-14);
    }
}

TEST_CASE("zero coupling gives determinant one") {
    CouplingMatrix zero(ComplexMatrix(2, 2));
    ShiftVector s({0.0, 0.3});
    CHECK(std::abs(det_airy_nystrom(s, zero, -1).value - 1.0) < 1e-15);
    CHECK(std::abs(det_airy_sq_nystrom(s, zero).value - 1.0) < 1e-15);
}

TEST_CASE("contour form equals the half-line form") {
    ShiftVector s({0.2, 0.6});
    CouplingMatrix c(ComplexMatrix(2, 2, {0.5, 0.3, -0.2, 0.4}));
    for (int sign : {-1, 1}) {
        cplx a = det_airy_nystrom(s, c, sign).value;
        cplx b = nystrom_det_contour(s, c, static_cast<double>(sign)).value;
        CHECK(std::abs(a - b) < 1e-10);
    }
    CHECK(default_contour_radius(s) >= 8.0);
    CHECK_THROWS_AS(nystrom_det_contour(ShiftVector({0.0}), c, -1.0), DomainError);
}

TEST_CASE("refinement reports its error estimate and respects the node cap") {
    ShiftVector s({-1.0});
    DetResult d = det_airy_sq_nystrom(s, CouplingMatrix::scalar(1.0));
    CHECK(d.converged);
    CHECK(d.est_error <= 1e-10);
    CHECK(d.nodes_used >= 40);
    NystromOptions capped;
    capped.max_nodes = 20;
    MatrixAirySqKernel k(s, CouplingMatrix::scalar(1.0));
    CHECK_THROWS_AS(nystrom_det(k, -1.0, half_line_rule(10, 44.0), capped), ConvergenceFailure);
    capped.throw_on_cap = false;
    DetResult soft = nystrom_det(k, -1.0, half_line_rule(10, 44.0), capped);
    CHECK_FALSE(soft.converged);
}

TEST_CASE("spectral radius of a rank-one kernel and the Airy operator") {
    FunctionKernel one(1, [](double x, double y) { return ComplexMatrix(1, 1, {std::exp(-x - y)}); });
    CHECK(spectral_radius(one, half_line_rule(40, 40.0)) == doctest::Approx(0.5).epsilon(1e-10));
    FunctionKernel airy(1, [](double x, double y) {
        return ComplexMatrix(1, 1, {scalar_airy_kernel(x - 4.0, y - 4.0)});
    });
    double lam = spectral_radius(airy, half_line_rule(80, 48.0));
    CHECK(lam > 0.9);
    CHECK(lam < 1.0);
}

TEST_CASE("default cutoff grows with negative shifts") {
    CHECK(default_cutoff(ShiftVector({1.0})) == 40.0);
    CHECK(default_cutoff(ShiftVector({-2.0, 1.0})) == 48.0);
}
