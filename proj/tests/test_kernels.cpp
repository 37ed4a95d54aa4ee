#include <cmath>

#include "doctest.h"
#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/kernels.hpp"
#include "ncairy/quadrature.hpp"

using namespace ncairy;

namespace {
const cplx I1(0.0, 1.0);

double ai(double x) { return airy_ai(x).ai; }

double integral_ai_ai(double a, double b) {
    static const QuadratureRule q = gauss_legendre(240, 0.0, 30.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * ai(a + q.nodes[i]) * ai(b + q.nodes[i]);
    return sum;
}
} // namespace

TEST_CASE("shift vectors split into barycenter and offsets") {
    ShiftVector s({-0.5, 0.1, 1.3});
    CHECK(s.center() == doctest::Approx(0.3));
    CHECK(s.offsets()[0] == doctest::Approx(-0.8));
    CHECK(s.max_offset() == doctest::Approx(1.0));
    CHECK(s.min_value() == -0.5);
    ShiftVector t = ShiftVector::from_center(2.0, {-0.25, 0.25});
    CHECK(t[0] == 1.75);
    CHECK(t[1] == 2.25);
    CHECK(ShiftVector::uniform(3, 0.4).max_offset() < 1e-15);
    CHECK_THROWS_AS(ShiftVector(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(ShiftVector({std::nan("")}), DomainError);
}

TEST_CASE("coupling matrix classification") {
    CouplingMatrix h(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    CHECK(h.is_hermitean());
    CHECK_FALSE(h.is_real());
    CouplingMatrix r(ComplexMatrix(2, 2, {0.5, 0.4, -0.3, 0.6}));
    CHECK(r.is_real());
    CHECK_FALSE(r.is_hermitean());
    CHECK(CouplingMatrix(ComplexMatrix(2, 2)).is_zero());
    CHECK(CouplingMatrix::scalar(-0.7).sigma_max() == doctest::Approx(0.7));
    CHECK(r.negated()(1, 0) == cplx(0.3));
    CHECK_THROWS_AS(CouplingMatrix(ComplexMatrix(2, 3)), DomainError);
}

TEST_CASE("matrix Airy kernel entries") {
    ShiftVector s({-0.3, 0.4});
    CouplingMatrix c(ComplexMatrix(2, 2, {0.5, I1, 0.2, -1.0}));
    ComplexMatrix k = matrix_airy_kernel(0.7, 1.1, s, c);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
            CHECK(std::abs(k(j, l) - c(j, l) * ai(0.7 + 1.1 + s[j] + s[l])) < 1e-15);
}

TEST_CASE("scalar Airy kernel equals the integral of Ai products") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-1.5, 0.3}, {2.0, 2.0 + 1e-9}, {1.2, -0.8}, {-3.0, -3.0}}) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::abs(scalar_airy_kernel(a, b) - integral_ai_ai(a, b)) < 1e-10);
    }
}

TEST_CASE("squared kernel equals the composition of two matrix Airy kernels") {
    ShiftVector s({-0.3, 0.4});
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    QuadratureRule q = gauss_legendre(240, 0.0, 30.0);
    for (auto [x, y] : {std::pair{0.0, 0.5}, {1.0, 1.0}, {-0.5, 2.0}}) {
        ComplexMatrix ref(2, 2);
        for (std::size_t i = 0; i < q.size(); ++i)
            ref += q.weights[i] * (matrix_airy_kernel(x, q.nodes[i], s, c) * matrix_airy_kernel(q.nodes[i], y, s, c));
        CHECK(max_abs_diff(matrix_airy_sq_kernel(x, y, s, c), ref) < 1e-10);
    }
}

TEST_CASE("contour kernel is E1^T E2 over lambda + mu") {
    ShiftVector s({0.2, -0.1});
    CouplingMatrix c(ComplexMatrix(2, 2, {0.5, 0.1, -0.2, 0.4}));
    cplx l(1.0, 0.7);
    cplx m(-0.4, 0.9);
    ContourSymbol a = contour_symbol(l, s, c);
    ContourSymbol b = contour_symbol(m, s, c);
    ComplexMatrix expect = (a.e1.transpose() * b.e2) * (1.0 / (l + m));
    CHECK(max_abs_diff(contour_kernel(l, m, s, c), expect) < 1e-14);
    CHECK_THROWS_AS(contour_kernel(l, -l, s, c), DivisionByZero);
}
