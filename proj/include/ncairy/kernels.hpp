#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ncairy/matrix.hpp"

namespace ncairy {

// Shifts s_1..s_r with barycenter S and offsets delta_j = s_j - S.
class ShiftVector {
public:
    ShiftVector() = default;
    explicit ShiftVector(std::vector<double> s);
    static ShiftVector from_center(double S, const std::vector<double>& delta);
    static ShiftVector uniform(std::size_t r, double s);

    std::size_t size() const { return s_.size(); }
    double operator[](std::size_t j) const { return s_[j]; }
    const std::vector<double>& values() const { return s_; }
    double center() const { return center_; }
    const std::vector<double>& offsets() const { return delta_; }
    double max_offset() const { return m_; }
    double min_value() const;
    ComplexMatrix as_matrix() const { return ComplexMatrix::diagonal(s_); }

private:
    std::vector<double> s_;
    std::vector<double> delta_;
    double center_ = 0.0;
    double m_ = 0.0;
};

class CouplingMatrix {
public:
    CouplingMatrix() = default;
    explicit CouplingMatrix(ComplexMatrix c);
    static CouplingMatrix scalar(double c);

    std::size_t size() const { return c_.rows(); }
    const ComplexMatrix& matrix() const { return c_; }
    cplx operator()(std::size_t j, std::size_t k) const { return c_(j, k); }
    bool is_real() const { return is_real_; }
    bool is_hermitean() const { return is_hermitean_; }
    bool is_zero() const { return sigma_max_ == 0.0; }
    double sigma_max() const { return sigma_max_; }
    CouplingMatrix negated() const { return CouplingMatrix(-c_); }

private:
    ComplexMatrix c_;
    bool is_real_ = true;
    bool is_hermitean_ = true;
    double sigma_max_ = 0.0;
};

// Entry (j,k) = c_jk Ai(x + y + s_j + s_k).
ComplexMatrix matrix_airy_kernel(double x, double y, const ShiftVector& s, const CouplingMatrix& c);

// (Ai(a)Ai'(b) - Ai'(a)Ai(b)) / (a - b), with the confluent limit near a = b.
double scalar_airy_kernel(double a, double b);

// Same kernel from precomputed Ai, Ai' values at both points.
double airy_kernel_from_values(double a, double ai_a, double aip_a, double b, double ai_b, double aip_b);

// Entry (j1,j2) = sum_k c_{j1 k} c_{k j2} K_Ai(x + s_j1 + s_k, y + s_j2 + s_k).
ComplexMatrix matrix_airy_sq_kernel(double x, double y, const ShiftVector& s, const CouplingMatrix& c);

struct ContourSymbol {
    ComplexMatrix e1;
    ComplexMatrix e2;
};

// E1(l) = -(1/2 i pi) e^{theta(l)} C, E2(l) = e^{theta(l)}, with
// theta(l) = diag(i l^3/6 + i s_j l).
ContourSymbol contour_symbol(cplx lambda, const ShiftVector& s, const CouplingMatrix& c);

// E1^T(l) E2(m) / (l + m).
ComplexMatrix contour_kernel(cplx lambda, cplx mu, const ShiftVector& s, const CouplingMatrix& c);

} // namespace ncairy
