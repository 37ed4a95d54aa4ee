#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ncairy/airy.hpp"
#include "ncairy/errors.hpp"

using namespace ncairy;

namespace {

struct Ref {
    double ai, aip, bi, bip;
};

// Bessel-function representations of Ai, Bi and their derivatives.
Ref bessel_reference(double x) {
    const double pi = std::numbers::pi;
    const double s3 = std::sqrt(3.0);
    if (x > 0.0) {
        double z = 2.0 / 3.0 * std::pow(x, 1.5);
        double k13 = std::cyl_bessel_k(1.0 / 3.0, z);
        double k23 = std::cyl_bessel_k(2.0 / 3.0, z);
        double i13 = std::cyl_bessel_i(1.0 / 3.0, z);
        double i23 = std::cyl_bessel_i(2.0 / 3.0, z);
        // I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu
        double im13 = i13 + 2.0 / pi * std::sin(pi / 3.0) * k13;
        double im23 = i23 + 2.0 / pi * std::sin(2.0 * pi / 3.0) * k23;
        return {std::sqrt(x / 3.0) / pi * k13, -x / (pi * s3) * k23, std::sqrt(x / 3.0) * (im13 + i13),
                x / s3 * (im23 + i23)};
    }
    double t = -x;
    double z = 2.0 / 3.0 * std::pow(t, 1.5);
    double j13 = std::cyl_bessel_j(1.0 / 3.0, z);
    double j23 = std::cyl_bessel_j(2.0 / 3.0, z);
    double y13 = std::cyl_neumann(1.0 / 3.0, z);
    double y23 = std::cyl_neumann(2.0 / 3.0, z);
    // J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu
    double jm13 = std::cos(pi / 3.0) * j13 - std::sin(pi / 3.0) * y13;
    double jm23 = std::cos(2.0 * pi / 3.0) * j23 - std::sin(2.0 * pi / 3.0) * y23;
    return {std::sqrt(t) / 3.0 * (j13 + jm13), t / 3.0 * (j23 - jm23), std::sqrt(t / 3.0) * (jm13 - j13),
            t / s3 * (jm23 + j23)};
}

} // namespace

TEST_CASE("airy values at zero match the Gamma-function closed forms") {
    double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
    AiryEval e = airy_eval(0.0);
    CHECK(e.ai == doctest::Approx(ai0).epsilon(1e-14));
    CHECK(e.aip == doctest::Approx(aip0).epsilon(1e-14));
    CHECK(e.bi == doctest::Approx(std::sqrt(3.0) * ai0).epsilon(1e-14));
    CHECK(e.bip == doctest::Approx(-std::sqrt(3.0) * aip0).epsilon(1e-14));
}

TEST_CASE("airy values agree with Bessel representations on both branches") {
    for (double x : {-15.0, -9.6, -9.4, -5.0, -1.3, -0.2, 0.4, 1.0, 3.7, 9.4, 9.6, 14.0, 25.0}) {
        CAPTURE(x);
        Ref r = bessel_reference(x);
        AiryEval e = airy_eval(x);
        double tol = 1e-11;
        if (x < 0.0) {
            double amp = std::hypot(r.ai, r.bi);
            double damp = std::hypot(r.aip, r.bip);
            CHECK(std::abs(e.ai - r.ai) <= tol * amp);
            CHECK(std::abs(e.bi - r.bi) <= tol * amp);
            CHECK(std::abs(e.aip - r.aip) <= tol * damp);
            CHECK(std::abs(e.bip - r.bip) <= tol * damp);
        } else {
            CHECK(e.ai == doctest::Approx(r.ai).epsilon(tol));
            CHECK(e.aip == doctest::Approx(r.aip).epsilon(tol));
            CHECK(e.bi == doctest::Approx(r.bi).epsilon(tol));
            CHECK(e.bip == doctest::Approx(r.bip).epsilon(tol));
        }
    }
}

TEST_CASE("airy_ai agrees with airy_eval and decays without overflow") {
    for (double x : {-7.0, 0.0, 2.0, 8.0}) {
        AiryPair p = airy_ai(x);
        AiryEval e = airy_eval(x);
        CHECK(p.ai == doctest::Approx(e.ai).epsilon(1e-14));
        CHECK(p.aip == doctest::Approx(e.aip).epsilon(1e-14));
    }
    AiryPair far = airy_ai(150.0);
    CHECK(std::isfinite(far.ai));
    CHECK(far.ai >= 0.0);
    CHECK(far.ai < 1e-300);
}

TEST_CASE("scaled values carry the exponential factors") {
    for (double x : {0.5, 4.0, 20.0}) {
        AiryEval s = airy_scaled(x);
        AiryEval u = airy_eval(x);
        CHECK(s.scaled);
        CHECK(s.zeta == doctest::Approx(airy_zeta(x)));
        CHECK(s.ai * std::exp(-s.zeta) == doctest::Approx(u.ai).epsilon(1e-12));
        CHECK(s.bi * std::exp(s.zeta) == doctest::Approx(u.bi).epsilon(1e-12));
    }
    AiryEval neg = airy_scaled(-3.0);
    CHECK(neg.zeta == 0.0);
    CHECK(neg.ai == doctest::Approx(airy_eval(-3.0).ai).epsilon(1e-15));
}

TEST_CASE("Wronskian equals 1/pi across the real line") {
    for (int i = 0; i <= 300; ++i) {
        double x = -40.0 + 0.25 * i;
        AiryEval e = airy_scaled(x);
        CHECK(std::abs((e.ai * e.bip - e.aip * e.bi) * std::numbers::pi - 1.0) <= 1e-10);
    }
}

TEST_CASE("series and asymptotic branches meet at the seam") {
    for (double x : {-kAirySeriesLimit, kAirySeriesLimit}) {
        AiryEval a = airy_series_branch(x);
        AiryEval b = airy_asymptotic_branch(x);
        double scale = x > 0 ? std::abs(b.ai) : std::hypot(b.ai, b.bi);
        CHECK(std::abs(a.ai - b.ai) <= 1e-11 * scale);
    }
    CHECK_THROWS_AS(airy_asymptotic_branch(2.0), DomainError);
}

TEST_CASE("airy errors") {
    CHECK_THROWS_AS(airy_eval(std::nan("")), DomainError);
    CHECK_THROWS_AS(airy_eval(-250.0), DomainError);
    CHECK_THROWS_AS(airy_eval(200.0), OverflowRisk);
    CHECK_NOTHROW(airy_scaled(200.0));
}
