#pragma once

#include <vector>

#include "ncairy/matrix.hpp"
#include "ncairy/ncp2.hpp"

namespace ncairy {

// a1 = alpha1 - i beta with its first three derivatives, a2 = -int_S^inf a1' a1,
// and the b-coefficients built from them.
struct P34State {
    double S = 0.0;
    ComplexMatrix s; // diag(S + delta_j)
    ComplexMatrix a1, a1p, a1pp, a1ppp;
    ComplexMatrix a2;
    ComplexMatrix b2, b3, b4;
};

P34State p34_state(const HMGrid& grid, double S);

// Right-hand side of the third-order equation
//   a1''' = 8i[a1,s]a1 + 8a1 + 8i[s,a2] + 6i a1'^2 + 4{a1',s}.
// The a2 term is included only when with_a2 is set.
ComplexMatrix p34_third_rhs(const P34State& st, bool with_a2 = true);

// Right-hand side of the fourth-order equation for a1 alone.
ComplexMatrix p34_fourth_rhs(const P34State& st);

struct P34Residual {
    double res3 = 0.0;    // |a1''' - rhs|
    double res2 = 0.0;    // |finite-difference a2' - a1' a1|
    double res4 = 0.0;    // |finite-difference a1'''' - rhs|
    double a2_term = 0.0; // |8i[s, a2]|, the part of res3 carried by a2
};

// Residuals at S. Finite differences use 5-point stencils with step
// fd_steps times the grid spacing.
P34Residual p34_residual(const HMGrid& grid, double S, int fd_steps = 1);

// B(l) = l^3 b3 + l b1 + bm1 / l and V_D(l) = l^2 v2 + v0.
struct LaxB {
    ComplexMatrix b3, b1, bm1;
    ComplexMatrix v2, v0;

    ComplexMatrix B(cplx lambda) const;
    ComplexMatrix VD(cplx lambda) const;
    // d/dl V_D
    ComplexMatrix dVD(cplx lambda) const;
};

LaxB lax_b(const P34State& st);

// max over lambda of |d/dl V_D - D B + [V_D, B]|, with D B from a central
// difference of B at S +- h.
double zero_curvature_residual_p34(const HMGrid& grid, double S, const std::vector<cplx>& lambdas, double h);

// Default lambda samples for curvature residuals.
std::vector<cplx> default_lambda_samples();

} // namespace ncairy
