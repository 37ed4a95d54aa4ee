#include <cmath>

#include "doctest.h"
#include "ncairy/errors.hpp"
#include "ncairy/ncp34.hpp"

using namespace ncairy;

namespace {
const cplx I1(0.0, 1.0);

CouplingMatrix hermitean() {
    return CouplingMatrix(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
}
} // namespace

TEST_CASE("zero coupling gives vanishing state and the trivial B") {
    auto g = hm_solve(CouplingMatrix(ComplexMatrix(2, 2)), {-0.2, 0.2}, -0.5);
    P34State st = p34_state(*g, 0.5);
    CHECK(st.a1.max_abs() == 0.0);
    CHECK(st.a2.max_abs() == 0.0);
    P34Residual res = p34_residual(*g, 0.5);
    CHECK(res.res3 == 0.0);
    CHECK(res.res4 == 0.0);
    LaxB lb = lax_b(st);
    cplx l(1.3, 0.4);
    ComplexMatrix one = ComplexMatrix::identity(2);
    ComplexMatrix z = ComplexMatrix::zero(2);
    ComplexMatrix expect = block2(z, -0.5 * l * one, (0.5 * l * l * l) * one + l * st.s, z) +
                           (1.0 / l) * block2(z, -1.0 * st.s, z, one);
    CHECK(max_abs_diff(lb.B(l), expect) < 1e-14);
    CHECK(zero_curvature_residual_p34(*g, 0.5, default_lambda_samples(), g->step()) < 1e-12);
}

TEST_CASE("a1 derivatives are consistent with finite differences") {
    auto g = hm_solve(hermitean(), {-0.25, 0.25}, -0.5);
    const double h = 1e-3;
    P34State c = p34_state(*g, 1.0);
    P34State up = p34_state(*g, 1.0 + h);
    P34State dn = p34_state(*g, 1.0 - h);
    CHECK(max_abs_diff((up.a1 - dn.a1) * cplx(0.5 / h), c.a1p) < 1e-6);
    CHECK(max_abs_diff((up.a1p - dn.a1p) * cplx(0.5 / h), c.a1pp) < 1e-6);
    CHECK(max_abs_diff((up.a1pp - dn.a1pp) * cplx(0.5 / h), c.a1ppp) < 1e-6);
    CHECK(max_abs_diff((up.a2 - dn.a2) * cplx(0.5 / h), c.a1p * c.a1) < 1e-6);
}

TEST_CASE("third and fourth order equations hold") {
    auto g = hm_solve(hermitean(), {-0.25, 0.25}, -0.5);
    for (double S : {0.0, 1.5, 3.0}) {
        P34Residual r = p34_residual(*g, S);
        CHECK(r.res3 <= 1e-5);
        CHECK(r.res2 <= 1e-6);
        CHECK(r.res4 <= 1e-4);
    }
}

TEST_CASE("the a2 term vanishes for r = 1") {
    auto g = hm_solve(CouplingMatrix::scalar(1.0), {0.0}, -0.5);
    for (double S : {0.0, 2.0}) {
        P34State st = p34_state(*g, S);
        CHECK(max_abs_diff(p34_third_rhs(st, true), p34_third_rhs(st, false)) <= 1e-12);
        CHECK(p34_residual(*g, S).a2_term <= 1e-12);
    }
}

TEST_CASE("V_D at zero and B domain") {
    auto g = hm_solve(hermitean(), {-0.25, 0.25}, -0.5);
    P34State st = p34_state(*g, 0.5);
    LaxB lb = lax_b(st);
    const Pauli& P = pauli();
    ComplexMatrix expect = -1.0 * tensor(ComplexMatrix::identity(2), P.plus) - 2.0 * I1 * tensor(st.a1p, P.minus);
    CHECK(max_abs_diff(lb.VD(0.0), expect) < 1e-14);
    CHECK_THROWS_AS(lb.B(0.05), DomainError);
}

TEST_CASE("curvature residual decays quadratically with the step") {
    auto g = hm_solve(hermitean(), {-0.25, 0.25}, -0.5);
    double a = zero_curvature_residual_p34(*g, 0.5, default_lambda_samples(), 4e-3);
    double b = zero_curvature_residual_p34(*g, 0.5, default_lambda_samples(), 2e-3);
    CHECK(a <= 1e-4);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.05));
}
