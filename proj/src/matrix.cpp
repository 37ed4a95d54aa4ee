#include "ncairy/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ncairy {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values)
    : rows_(rows), cols_(cols), data_(values) {
    if (data_.size() != rows * cols) throw std::invalid_argument("ComplexMatrix: wrong number of values");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx a) {
    for (auto& v : data_) v *= a;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx a, ComplexMatrix b) { return b *= a; }
ComplexMatrix operator*(ComplexMatrix b, cplx a) { return b *= a; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& sigma) {
    std::size_t n = x.rows();
    std::size_t p = x.cols();
    ComplexMatrix out(sigma.rows() * n, sigma.cols() * p);
    for (std::size_t bi = 0; bi < sigma.rows(); ++bi)
        for (std::size_t bj = 0; bj < sigma.cols(); ++bj) {
            cplx s = sigma(bi, bj);
            if (s == cplx(0.0)) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < p; ++j) out(bi * n + i, bj * p + j) = s * x(i, j);
        }
    return out;
}

ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const ComplexMatrix& d) {
    std::size_t n = a.rows();
    ComplexMatrix out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = a(i, j);
            out(i, j + n) = b(i, j);
            out(i + n, j) = c(i, j);
            out(i + n, j + n) = d(i, j);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    ComplexMatrix w = a;
    std::size_t m = w.rows();
    std::size_t n = w.cols();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
                off = std::max(off, g / std::sqrt(alpha * beta));
                cplx phase = gamma / g;
                double zeta = (beta - alpha) / (2.0 * g);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    cplx ap = w(i, p);
                    cplx aq = w(i, q) * std::conj(phase);
                    w(i, p) = c * ap - s * aq;
                    w(i, q) = s * ap + c * aq;
                }
            }
        if (off < 1e-15) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += std::norm(w(i, j));
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double largest_singular_value(const ComplexMatrix& a) {
    if (a.cols() == 0) return 0.0;
    return singular_values(a).front();
}

} // namespace ncairy
