#include "ncairy/simd.hpp"

namespace ncairy::simd::scalar {

void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double ar = a.real();
    const double ai = a.imag();
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        double xr = xs[2 * i];
        double xi = xs[2 * i + 1];
        double pr = ar * xr - ai * xi;
        double pi = ar * xi + ai * xr;
        ys[2 * i] -= pr;
        ys[2 * i + 1] -= pi;
    }
}

double dot(std::size_t n, const double* x, const double* y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

} // namespace ncairy::simd::scalar
