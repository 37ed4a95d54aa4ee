#include "ncairy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"

namespace ncairy {

ShiftVector::ShiftVector(std::vector<double> s) : s_(std::move(s)) {
    if (s_.empty()) throw DomainError("ShiftVector: need at least one shift");
    for (double v : s_)
        if (!std::isfinite(v)) throw DomainError("ShiftVector: shifts must be finite");
    center_ = std::accumulate(s_.begin(), s_.end(), 0.0) / static_cast<double>(s_.size());
    delta_.resize(s_.size());
    m_ = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) {
        delta_[j] = s_[j] - center_;
        m_ = std::max(m_, std::abs(delta_[j]));
    }
}

ShiftVector ShiftVector::from_center(double S, const std::vector<double>& delta) {
    std::vector<double> s(delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j) s[j] = S + delta[j];
    return ShiftVector(std::move(s));
}

ShiftVector ShiftVector::uniform(std::size_t r, double s) { return ShiftVector(std::vector<double>(r, s)); }

double ShiftVector::min_value() const { return *std::min_element(s_.begin(), s_.end()); }

CouplingMatrix::CouplingMatrix(ComplexMatrix c) : c_(std::move(c)) {
    if (!c_.square() || c_.rows() == 0) throw DomainError("CouplingMatrix: must be square and non-empty");
    double scale = std::max(1.0, c_.max_abs());
    for (std::size_t j = 0; j < c_.rows(); ++j)
        for (std::size_t k = 0; k < c_.cols(); ++k) {
            cplx v = c_(j, k);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("CouplingMatrix: entries must be finite");
            if (v.imag() != 0.0) is_real_ = false;
            if (std::abs(v - std::conj(c_(k, j))) > 1e-14 * scale) is_hermitean_ = false;
        }
    sigma_max_ = largest_singular_value(c_);
}

CouplingMatrix CouplingMatrix::scalar(double c) { return CouplingMatrix(ComplexMatrix(1, 1, {c})); }

ComplexMatrix matrix_airy_kernel(double x, double y, const ShiftVector& s, const CouplingMatrix& c) {
    std::size_t r = s.size();
    ComplexMatrix out(r, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
            cplx cjk = c(j, k);
            if (cjk == cplx(0.0)) continue;
            out(j, k) = cjk * airy_ai(x + y + s[j] + s[k]).ai;
        }
    return out;
}

double airy_kernel_from_values(double a, double ai_a, double aip_a, double b, double ai_b, double aip_b) {
    double d = a - b;
    if (std::abs(d) < 1e-6) {
        // d/db K(a,b) at b = a is -Ai(a)^2 / 2
        return aip_a * aip_a - a * ai_a * ai_a - 0.5 * ai_a * ai_a * (b - a);
    }
    return (ai_a * aip_b - aip_a * ai_b) / d;
}

double scalar_airy_kernel(double a, double b) {
    AiryPair pa = airy_ai(a);
    AiryPair pb = airy_ai(b);
    return airy_kernel_from_values(a, pa.ai, pa.aip, b, pb.ai, pb.aip);
}

ComplexMatrix matrix_airy_sq_kernel(double x, double y, const ShiftVector& s, const CouplingMatrix& c) {
    std::size_t r = s.size();
    ComplexMatrix out(r, r);
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<AiryPair> px(r), py(r);
        for (std::size_t j = 0; j < r; ++j) {
            px[j] = airy_ai(x + s[j] + s[k]);
            py[j] = airy_ai(y + s[j] + s[k]);
        }
        for (std::size_t j1 = 0; j1 < r; ++j1) {
            cplx c1 = c(j1, k);
            if (c1 == cplx(0.0)) continue;
            double a = x + s[j1] + s[k];
            for (std::size_t j2 = 0; j2 < r; ++j2) {
                cplx c2 = c(k, j2);
                if (c2 == cplx(0.0)) continue;
                double b = y + s[j2] + s[k];
                out(j1, j2) += c1 * c2 * airy_kernel_from_values(a, px[j1].ai, px[j1].aip, b, py[j2].ai, py[j2].aip);
            }
        }
    }
    return out;
}

namespace {

cplx theta(cplx lambda, double sj) {
    const cplx i(0.0, 1.0);
    return i * lambda * lambda * lambda / 6.0 + i * sj * lambda;
}

} // namespace

ContourSymbol contour_symbol(cplx lambda, const ShiftVector& s, const CouplingMatrix& c) {
    std::size_t r = s.size();
    const cplx pref = -1.0 / (2.0 * cplx(0.0, 1.0) * std::numbers::pi);
    ContourSymbol out{ComplexMatrix(r, r), ComplexMatrix(r, r)};
    std::vector<cplx> e(r);
    for (std::size_t j = 0; j < r; ++j) {
        cplx th = theta(lambda, s[j]);
        if (th.real() > 700.0) throw OverflowRisk("contour_symbol: exponent real part above 700");
        e[j] = std::exp(th);
        out.e2(j, j) = e[j];
    }
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) out.e1(j, k) = pref * e[j] * c(j, k);
    return out;
}

ComplexMatrix contour_kernel(cplx lambda, cplx mu, const ShiftVector& s, const CouplingMatrix& c) {
    cplx sum = lambda + mu;
    if (std::abs(sum) < 1e-14) throw DivisionByZero("contour_kernel: lambda + mu vanishes");
    ContourSymbol a = contour_symbol(lambda, s, c);
    ContourSymbol b = contour_symbol(mu, s, c);
    ComplexMatrix k = a.e1.transpose() * b.e2;
    k *= 1.0 / sum;
    return k;
}

} // namespace ncairy
