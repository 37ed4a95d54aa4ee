#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "ncairy/kernels.hpp"
#include "ncairy/matrix.hpp"
#include "ncairy/quadrature.hpp"

namespace ncairy {

struct DetResult {
    cplx value = 1.0;
    double log_abs = 0.0;
    int nodes_used = 0;
    double est_error = 0.0;
    bool converged = true;
};

// Determinant of a dense n x n matrix (row-major, overwritten) by LU with
// partial pivoting. log|det| is accumulated separately from the phase.
struct LuDeterminant {
    cplx phase = 1.0;
    double log_abs = 0.0;
    bool singular = false;
    cplx value() const;
};
LuDeterminant lu_determinant(std::vector<cplx>& a, std::size_t n);

// An r x r matrix-valued kernel on a real domain.
class BlockKernel {
public:
    virtual ~BlockKernel() = default;
    virtual std::size_t dim() const = 0;
    virtual ComplexMatrix operator()(double x, double y) const = 0;

    // Writes K(x_i, x_l)(j, k) at row i*r + j, column l*r + k of a dense
    // (m r) x (m r) row-major matrix.
    virtual void fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const;
};

class FunctionKernel : public BlockKernel {
public:
    FunctionKernel(std::size_t r, std::function<ComplexMatrix(double, double)> f) : r_(r), f_(std::move(f)) {}
    std::size_t dim() const override { return r_; }
    ComplexMatrix operator()(double x, double y) const override { return f_(x, y); }

private:
    std::size_t r_;
    std::function<ComplexMatrix(double, double)> f_;
};

// c_jk Ai(x + y + s_j + s_k)
class MatrixAiryKernel : public BlockKernel {
public:
    MatrixAiryKernel(ShiftVector s, CouplingMatrix c) : s_(std::move(s)), c_(std::move(c)) {}
    std::size_t dim() const override { return s_.size(); }
    ComplexMatrix operator()(double x, double y) const override { return matrix_airy_kernel(x, y, s_, c_); }
    void fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const override;

private:
    ShiftVector s_;
    CouplingMatrix c_;
};

// sum_k c_{j1 k} c_{k j2} K_Ai(x + s_j1 + s_k, y + s_j2 + s_k)
class MatrixAirySqKernel : public BlockKernel {
public:
    MatrixAirySqKernel(ShiftVector s, CouplingMatrix c) : s_(std::move(s)), c_(std::move(c)) {}
    std::size_t dim() const override { return s_.size(); }
    ComplexMatrix operator()(double x, double y) const override { return matrix_airy_sq_kernel(x, y, s_, c_); }
    void fill(const std::vector<double>& nodes, std::vector<cplx>& dense) const override;

private:
    ShiftVector s_;
    CouplingMatrix c_;
};

struct NystromOptions {
    bool refine = true;
    int max_nodes = 320;
    double tol = 1e-10;
    // When false, hitting the node cap returns converged = false instead of
    // throwing ConvergenceFailure.
    bool throw_on_cap = true;
    // Measure convergence by |delta det| instead of |delta log det|. Used
    // where the determinant may pass through zero.
    bool absolute_error = false;
};

// Half-line truncation point for shifts s: 40 + 2 max(0, -2 min_j s_j).
double default_cutoff(const ShiftVector& s);

// det(Id + z K) on the rule's domain with symmetric sqrt-weight splitting.
// With refinement, m doubles until successive levels agree.
DetResult nystrom_det(const BlockKernel& kernel, cplx z, const QuadratureRule& rule,
                      const NystromOptions& opts = {});

// Same assembly with one-sided weights K(x_i, x_k) w_k.
DetResult nystrom_det_one_sided(const BlockKernel& kernel, cplx z, const QuadratureRule& rule);

// Smallest radius >= 8 for which the Airy symbol is below e^{-25} at both
// ray ends.
double default_contour_radius(const ShiftVector& s);

// det(Id + z K) with K the contour kernel on two straight rays from 0.5i at
// angles 5pi/6 and pi/6.
DetResult nystrom_det_contour(const ShiftVector& s, const CouplingMatrix& c, cplx z, int m_per_ray = 40,
                              double radius = 0.0, const NystromOptions& opts = {});

// Largest-modulus eigenvalue of the weighted operator by power iteration.
// The kernel must be real and self-adjoint.
double spectral_radius(const BlockKernel& kernel, const QuadratureRule& rule);

} // namespace ncairy
