#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ncairy/errors.hpp"
#include "ncairy/kernels.hpp"
#include "ncairy/matrix.hpp"

namespace ncairy {

// D^2 beta = 4{s, beta} + 8 beta^3 with s = diag(S + delta_j).
ComplexMatrix ncp2_rhs(double S, const std::vector<double>& delta, const ComplexMatrix& beta);

// Third derivative obtained by differentiating the equation once more.
ComplexMatrix ncp2_third(double S, const std::vector<double>& delta, const ComplexMatrix& beta,
                         const ComplexMatrix& dbeta);

// Solution of the integral equation
//   beta = U + 4 pi int_S^inf G_d(S,t) [beta^3](t) dt
// on composite Gauss-Legendre panels over [S0, S_max], with
//   U_kl = -c_kl Ai(2S + d),  G_d(S,t) = Ai(2S+d)Bi(2t+d) - Ai(2t+d)Bi(2S+d),
//   d = delta_k + delta_l.
class HMTail {
public:
    static constexpr int kPanelNodes = 16;

    HMTail(const CouplingMatrix& c, std::vector<double> delta, double s0, double s_max, int n_tail, double tol);

    double s0() const { return s0_; }
    double s_max() const { return s_max_; }
    int sweeps() const { return sweeps_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<ComplexMatrix>& beta_nodes() const { return beta_; }
    const std::vector<ComplexMatrix>& dbeta_nodes() const { return dbeta_; }

    // Valid for T >= S0. Beyond S_max the leading term U is returned.
    ComplexMatrix beta(double T) const;
    ComplexMatrix dbeta(double T) const;

    // int_T^{S_max} f dt from samples of f at the tail nodes, T >= S0.
    ComplexMatrix integrate(double T, const std::vector<ComplexMatrix>& samples) const;

    // Leading-order estimate of int_{S_max}^inf beta^2 dt.
    const ComplexMatrix& beta2_beyond() const { return beta2_beyond_; }

private:
    struct Entry {
        std::size_t k, l;
        double d;
        cplx c;
        std::vector<double> ai, aip, bi, bip; // at 2 t_j + d
        std::vector<cplx> g_bi, g_ai;          // Bi F and Ai F at nodes
        std::vector<cplx> suffix_bi, suffix_ai; // whole-panel sums from panel P on
    };

    std::vector<double> partial_weights(double T, std::size_t panel) const;
    std::size_t panel_of(double T) const;
    void update_integrals();
    void values_at(double T, ComplexMatrix* beta, ComplexMatrix* dbeta) const;

    std::size_t r_;
    CouplingMatrix c_;
    std::vector<double> delta_;
    double s0_, s_max_;
    std::size_t panels_;
    double width_;
    std::vector<double> nodes_, weights_;
    std::vector<double> ref_nodes_, ref_weights_, bary_;
    std::vector<std::vector<double>> node_partial_;
    std::vector<Entry> entries_;
    std::vector<ComplexMatrix> beta_, dbeta_;
    ComplexMatrix beta2_beyond_;
    int sweeps_ = 0;
};

struct HMOptions {
    double s0 = 2.0;
    double span = 8.0; // S_max = S0 + span
    double step = 1e-3;
    double tol = 1e-12;
    int n_tail = 1024;
    int s0_raises = 4;
};

// Values and first three derivatives of beta at one point.
struct BetaJet {
    double S = 0.0;
    ComplexMatrix beta, d1, d2, d3;
};

// A function f with f', f'' sampled on the grid, used by the Hermite rule.
struct Jet {
    ComplexMatrix f, d1, d2;
};

class HMGrid;

// int_S^inf f(t) dt for S down to the bottom of a grid.
class CumulativeIntegral {
public:
    ComplexMatrix operator()(double S) const;

private:
    friend class HMGrid;
    const HMGrid* grid_ = nullptr;
    std::function<Jet(const BetaJet&, std::size_t)> jet_;
    std::vector<ComplexMatrix> at_nodes_;        // grid nodes, from S_n to infinity
    std::vector<ComplexMatrix> tail_samples_;    // f at the tail nodes
    ComplexMatrix beyond_;
    std::shared_ptr<const HMTail> tail_;
};

// Sampled Hastings-McLeod solution: Picard tail above S0 and an RK4 grid
// going down from S0 in steps of h.
class HMGrid {
public:
    HMGrid(CouplingMatrix c, std::vector<double> delta, std::shared_ptr<const HMTail> tail, double h,
           std::vector<ComplexMatrix> beta, std::vector<ComplexMatrix> dbeta, std::optional<double> pole_at);
    HMGrid(const HMGrid&) = delete;
    HMGrid& operator=(const HMGrid&) = delete;

    const CouplingMatrix& coupling() const { return c_; }
    const std::vector<double>& delta() const { return delta_; }
    std::size_t dim() const { return delta_.size(); }
    double s_tail() const { return tail_->s0(); }
    double step() const { return h_; }
    double s_min() const;
    const std::optional<double>& pole_at() const { return pole_at_; }
    const HMTail& tail() const { return *tail_; }

    // Grid abscissae S0, S0 - h, S0 - 2h, ...
    std::vector<double> s_values() const;
    const std::vector<ComplexMatrix>& beta_nodes() const { return beta_; }
    const std::vector<ComplexMatrix>& dbeta_nodes() const { return dbeta_; }

    bool covers(double S) const { return S >= s_min() - 1e-12 * std::max(1.0, std::abs(S)); }

    ComplexMatrix shift_matrix(double S) const;
    ComplexMatrix beta(double S) const;
    ComplexMatrix dbeta(double S) const;
    BetaJet jet(double S) const;

    // int_S^inf beta^2 dt
    ComplexMatrix integral_beta2(double S) const { return beta2_(S); }
    // int_S^inf Tr beta dt
    cplx integral_trace_beta(double S) const { return trace_beta_(S)(0, 0); }
    // int_S^inf (t - S) Tr beta^2 dt
    cplx integral_weighted_trace_beta2(double S) const;
    // int_S^inf a1' a1 dt
    ComplexMatrix integral_a1p_a1(double S) const { return a1p_a1_(S); }

    // Builds int_S^inf f for an arbitrary jet. The second argument of the
    // callback is the grid node index, or npos for points on the tail.
    CumulativeIntegral cumulative(std::function<Jet(const BetaJet&, std::size_t)> jet) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    friend class CumulativeIntegral;
    std::size_t node_below(double S, double& frac) const;
    BetaJet node_jet(std::size_t n) const;
    BetaJet tail_jet(std::size_t j) const;

    CouplingMatrix c_;
    std::vector<double> delta_;
    std::shared_ptr<const HMTail> tail_;
    double h_;
    std::vector<ComplexMatrix> beta_, dbeta_;
    std::optional<double> pole_at_;
    CumulativeIntegral beta2_, trace_beta_, t_trace_beta2_, a1p_a1_;
};

class PoleEncountered : public Error {
public:
    PoleEncountered(double pole, std::shared_ptr<const HMGrid> grid);
    double pole_at() const { return pole_; }
    const std::shared_ptr<const HMGrid>& grid() const { return grid_; }

private:
    double pole_;
    std::shared_ptr<const HMGrid> grid_;
};

std::shared_ptr<const HMTail> hm_tail_picard(const CouplingMatrix& c, const std::vector<double>& delta, double s0,
                                             double s_max, int n_tail = 1024, double tol = 1e-12);

// RK4 from the top of the tail down to S_min with step h. Throws
// PoleEncountered when |beta| exceeds 1e8; the exception carries the grid
// computed above the pole.
std::shared_ptr<const HMGrid> hm_continue(const CouplingMatrix& c, const std::vector<double>& delta,
                                          std::shared_ptr<const HMTail> tail, double s_min, double h = 1e-3);

// Picard tail with the adaptive S0 policy followed by hm_continue.
std::shared_ptr<const HMGrid> hm_solve(const CouplingMatrix& c, const std::vector<double>& delta, double s_min,
                                       const HMOptions& opts = {});

// alpha_1(S) = 2i int_S^inf beta^2(t) dt
ComplexMatrix alpha1(const HMGrid& grid, double S);

// |5-point second difference - rhs| in the max norm.
double ncp2_residual(const HMGrid& grid, double S);

// 2x2 Pauli matrices and the raising/lowering pair. sigma2 is
// [[0, i], [-i, 0]].
struct Pauli {
    ComplexMatrix s1, s2, s3, plus, minus, one;
};
const Pauli& pauli();

struct LaxPair {
    std::size_t r = 0;
    // A(l) = a2 l^2 + a1 l + a0
    ComplexMatrix a2, a1, a0;
    // U_D(l) = ud1 l + ud0
    ComplexMatrix ud1, ud0;
    // U_j(l) = uj1[j] l + uj0[j]
    std::vector<ComplexMatrix> uj1, uj0;

    ComplexMatrix A(cplx lambda) const;
    ComplexMatrix UD(cplx lambda) const;
    ComplexMatrix Uj(std::size_t j, cplx lambda) const;
};

LaxPair lax_matrices(const HMGrid& grid, double S);

// max over lambda of |d/dl U_D - D A + [U_D, A]|, with D A assembled from
// the equation.
double zero_curvature_residual_p2(const HMGrid& grid, double S, const std::vector<cplx>& lambdas);

// beta_2 = -(i/2) D beta - i beta alpha_1
ComplexMatrix beta2_coefficient(const HMGrid& grid, double S);

} // namespace ncairy
