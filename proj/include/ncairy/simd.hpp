#pragma once

#include <cstddef>
#include <string_view>

#include "ncairy/matrix.hpp"

namespace ncairy::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);

// Backend chosen at startup from the CPU features. NCAIRY_SIMD=scalar in the
// environment forces the reference path.
Backend active_backend();

// Throws DomainError when the backend is not available on this CPU.
void set_backend(Backend b);

// y[i] -= a * x[i]
void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y);

// sum x[i] * y[i]
double dot(std::size_t n, const double* x, const double* y);

namespace scalar {
void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y);
double dot(std::size_t n, const double* x, const double* y);
} // namespace scalar

#if defined(NCAIRY_HAVE_AVX2)
namespace avx2 {
void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y);
double dot(std::size_t n, const double* x, const double* y);
} // namespace avx2
#endif

} // namespace ncairy::simd
