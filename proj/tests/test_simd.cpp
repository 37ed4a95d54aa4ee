#include <random>
#include <vector>

#include "doctest.h"
#include "ncairy/errors.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/simd.hpp"
#include "ncairy/tw.hpp"

using namespace ncairy;

namespace {

struct BackendGuard {
    simd::Backend saved = simd::active_backend();
    ~BackendGuard() { simd::set_backend(saved); }
};

} // namespace

TEST_CASE("scalar backend is always available") {
    CHECK(simd::backend_available(simd::Backend::scalar));
    CHECK(simd::backend_name(simd::Backend::scalar) == "scalar");
    CHECK(simd::backend_name(simd::Backend::avx2) == "avx2");
}

#if defined(NCAIRY_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference") {
    if (!simd::backend_available(simd::Backend::avx2)) return;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n = 0; n <= 67; ++n) {
        CAPTURE(n);
        std::vector<cplx> x(n), y(n);
        std::vector<double> p(n), q(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = cplx(u(rng), u(rng));
            y[i] = cplx(u(rng), u(rng));
            p[i] = u(rng);
            q[i] = u(rng);
        }
        cplx a(u(rng), u(rng));
        std::vector<cplx> y1 = y;
        std::vector<cplx> y2 = y;
        simd::scalar::csub_scaled(n, a, x.data(), y1.data());
        simd::avx2::csub_scaled(n, a, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);
        double d1 = simd::scalar::dot(n, p.data(), q.data());
        double d2 = simd::avx2::dot(n, p.data(), q.data());
        CHECK(std::abs(d1 - d2) <= 1e-13);
    }
}

TEST_CASE("determinants agree across backends") {
    if (!simd::backend_available(simd::Backend::avx2)) return;
    BackendGuard guard;
    ShiftVector s({-0.2, 0.3});
    CouplingMatrix c(ComplexMatrix(2, 2, {0.6, cplx(0.3, 0.2), cplx(0.3, -0.2), 0.5}));
    simd::set_backend(simd::Backend::scalar);
    cplx a = det_airy_sq_nystrom(s, c).value;
    simd::set_backend(simd::Backend::avx2);
    cplx b = det_airy_sq_nystrom(s, c).value;
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
}
#endif

TEST_CASE("dispatching entry points follow the active backend") {
    BackendGuard guard;
    simd::set_backend(simd::Backend::scalar);
    CHECK(simd::active_backend() == simd::Backend::scalar);
    std::vector<double> p{1.0, 2.0, 3.0};
    std::vector<double> q{4.0, 5.0, 6.0};
    CHECK(simd::dot(3, p.data(), q.data()) == 32.0);
    std::vector<cplx> x{cplx(1.0, 1.0)};
    std::vector<cplx> y{cplx(0.0, 0.0)};
    simd::csub_scaled(1, cplx(0.0, 1.0), x.data(), y.data());
    CHECK(std::abs(y[0] - cplx(1.0, -1.0)) < 1e-15);
    if (!simd::backend_available(simd::Backend::avx2))
        CHECK_THROWS_AS(simd::set_backend(simd::Backend::avx2), DomainError);
}
