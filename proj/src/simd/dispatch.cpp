#include <atomic>
#include <cstdlib>
#include <string>

#include "ncairy/errors.hpp"
#include "ncairy/simd.hpp"

namespace ncairy::simd {

namespace {

bool cpu_has_avx2() {
#if defined(NCAIRY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() {
    if (const char* env = std::getenv("NCAIRY_SIMD")) {
        if (std::string(env) == "scalar") return Backend::scalar;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

} // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_available(b)) throw DomainError("simd: backend not available on this CPU");
    current().store(b, std::memory_order_relaxed);
}

void csub_scaled(std::size_t n, cplx a, const cplx* x, cplx* y) {
#if defined(NCAIRY_HAVE_AVX2)
    if (active_backend() == Backend::avx2) return avx2::csub_scaled(n, a, x, y);
#endif
    scalar::csub_scaled(n, a, x, y);
}

double dot(std::size_t n, const double* x, const double* y) {
#if defined(NCAIRY_HAVE_AVX2)
    if (active_backend() == Backend::avx2) return avx2::dot(n, x, y);
#endif
    return scalar::dot(n, x, y);
}

} // namespace ncairy::simd
