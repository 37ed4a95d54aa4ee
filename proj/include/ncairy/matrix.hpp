#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ncairy {

using cplx = std::complex<double>;

// Small dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values);

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    const std::vector<cplx>& values() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx a);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;

    // Largest entry modulus.
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx a, ComplexMatrix b);
ComplexMatrix operator*(ComplexMatrix b, cplx a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// 2x2 block matrix with blocks sigma(i,j) * x.
ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& sigma);

// Assemble a 2x2 block matrix from four equally sized blocks.
ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const ComplexMatrix& d);

// max_abs(a - b)
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Singular values in decreasing order (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& a);

double largest_singular_value(const ComplexMatrix& a);

} // namespace ncairy
