#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ncairy/fredholm.hpp"
#include "ncairy/kernels.hpp"
#include "ncairy/ncp2.hpp"

namespace ncairy {

enum class Route { nystrom, painleve, both };

struct GapQuery {
    ShiftVector s;
    CouplingMatrix c;
    Route route = Route::both;
    double tol = 1e-10;
    int nodes = 40;      // initial Nystrom nodes
    double cutoff = 0.0; // 0 selects default_cutoff
    HMOptions hm;
};

struct GapResult {
    std::optional<DetResult> nystrom;
    std::optional<cplx> painleve;
    // |nystrom - painleve| when both routes ran.
    double difference() const;
};

// det(Id - Ai^2) for the matrix Airy kernel.
GapResult det_airy_sq(const GapQuery& q);

// det(Id + sign Ai), sign = +1 or -1.
GapResult det_airy(const GapQuery& q, int sign);

// Nystrom routes alone.
DetResult det_airy_sq_nystrom(const ShiftVector& s, const CouplingMatrix& c, const NystromOptions& opts = {},
                              int nodes = 40, double cutoff = 0.0);
DetResult det_airy_nystrom(const ShiftVector& s, const CouplingMatrix& c, int sign, const NystromOptions& opts = {},
                           int nodes = 40, double cutoff = 0.0);

// Painleve routes from a solved grid at barycenter S (offsets are the grid's):
//   det(Id - Ai^2) = exp(-4 int_S^inf (t-S) Tr beta^2)
//   det(Id + sign Ai) = exp(-int_S^inf Tr(sign beta + 2(t-S) beta^2))
cplx det_airy_sq_painleve(const HMGrid& grid, double S);
cplx det_airy_painleve(const HMGrid& grid, double S, int sign);

// Scalar distributions from the r = 1, c = 1 solution, u(x) = -beta(x/2).
class ScalarChain {
public:
    // Grid covering x >= x_min; x_min must be at least -8.
    explicit ScalarChain(double x_min, const HMOptions& opts = {});

    double x_min() const { return x_min_; }
    const HMGrid& grid() const { return *grid_; }

    double u(double x) const;
    double du(double x) const;
    // int_x^inf u
    double integral_u(double x) const;
    double f2(double x) const;
    double f1(double x) const;
    // w = u^2/2 - u'/2
    double w(double x) const;
    // exp(-int_x^inf (y - x) w(y) dy)
    double f1_alt(double x) const;
    // |w''' - 12 w w' - 2 w - x w'| by 5-point differences with step h.
    double p34_residual(double x, double h) const;

private:
    double x_min_;
    std::shared_ptr<const HMGrid> grid_;
    CumulativeIntegral dbeta_, t_dbeta_;
};

double scalar_f2(double x);
double scalar_f1(double x);

struct WChecks {
    double w = 0.0;
    double f1_alt = 0.0;
};
WChecks scalar_w_checks(double x);

struct MiuraResult {
    double residual = 0.0;     // |(L_xi' - 2 L_gamma')^2 + L_xi''|
    double rem_residual = 0.0; // |u + v^2 -+ v'| for the better branch
    int rem_branch = 0;        // +1 or -1
};

// r = 1 Miura identities from Nystrom determinants on the stencil
// s_center + k h, k = -2..2. tau_xi = det(Id - Ai^2), tau_gamma = det(Id - Ai).
MiuraResult miura_residual(double c, double s_center, double h, int nodes = 80);

// Richardson-extrapolated central differences (steps h, h/2) of both log
// determinants in each s_k and the values predicted from the Hastings-McLeod
// state.
struct TauDerivatives {
    std::vector<cplx> fd_xi, alpha_pred; // d/ds_k ln det(Id - Ai^2) vs -2i (alpha1)_kk
    std::vector<cplx> fd_gamma, a1_pred; // d/ds_k ln det(Id - Ai) vs -i (a1)_kk
    double max_rel_error() const;
};
TauDerivatives tau_derivatives(const HMGrid& grid, double S, double h = 1e-3, int nodes = 80);

struct TPPoint {
    std::size_t level;
    double x;
};

// det [Ai^2(xi_a, xi_b)] over the given points.
double tp_minor(const ShiftVector& s, const CouplingMatrix& c, const std::vector<TPPoint>& points);

struct TPResult {
    double min_det = 0.0;
    int trials = 0;
    bool pass() const { return min_det > -1e-12; }
};

// Random point sets of size 1..max_points on levels 1..r, positions in
// [-5, 5]; returns the smallest minor seen.
TPResult total_positivity_check(const ShiftVector& s, const CouplingMatrix& c, int max_points, int trials,
                                std::uint64_t seed);

// For two points, (1/2) sum_{k1,k2} int int det[F(xi_a, zeta_c)]^2 with
// F((j,x),(k,z)) = c_jk Ai(x + z + s_j + s_k), by tensor Gauss-Legendre on
// [0, z_max]^2.
double de_bruijn_two_point(const ShiftVector& s, const CouplingMatrix& c, const TPPoint& a, const TPPoint& b,
                           int m = 80, double z_max = 25.0);

struct ScanResult {
    std::vector<std::pair<double, double>> samples; // (s, det) from s_hi down to s_lo
    std::optional<double> crossing;
};

// det(Id - Ai^2) at s = (s, ..., s) for n points from s_hi down to s_lo. The
// first sign change is bisected to 1e-3.
ScanResult existence_scan(const CouplingMatrix& c, double s_lo, double s_hi, int n = 25);

} // namespace ncairy
