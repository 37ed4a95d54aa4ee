#include "ncairy/airy.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncairy/errors.hpp"

namespace ncairy {

namespace {

// Double-double arithmetic, enough of it to sum the Maclaurin series with
// ~32 significant digits. Products use Dekker splitting so the code does not
// depend on hardware FMA.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline void split(double a, double& hi, double& lo) {
    double t = 134217729.0 * a;
    hi = t - (t - a);
    lo = a - hi;
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
}

inline DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }

inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, double b) {
    double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    DD s = two_sum(a.hi, -p.hi);
    s.lo -= p.lo;
    s.lo += a.lo;
    double q2 = (s.hi + s.lo) / b;
    return quick_two_sum(q1, q2);
}

// Ai(0), -Ai'(0) and sqrt(3) to double-double precision.
constexpr DD kC1{0.3550280538878172, 2.05233632436212e-17};
constexpr DD kC2{0.2588194037928068, -2.522243111610832e-17};
constexpr DD kSqrt3{1.7320508075688772, 1.0035084221806903e-16};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kPi = std::numbers::pi;

struct SeriesSums {
    DD f, fp, g, gp;
};

// f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
// and their derivatives, each built from its own term recurrence.
SeriesSums maclaurin(double x) {
    DD x2 = two_prod(x, x);
    DD x3 = x2 * x;

    SeriesSums out;
    DD tf{1.0, 0.0};
    DD tg{x, 0.0};
    DD tfp = x2 / 2.0;
    DD tgp{1.0, 0.0};
    out.f = tf;
    out.g = tg;
    out.fp = tfp;
    out.gp = tgp;

    double peak = std::max({1.0, std::abs(x), std::abs(tfp.hi)});
    for (int k = 0; k < 200; ++k) {
        double k3 = 3.0 * k;
        tf = x3 * tf / ((k3 + 2.0) * (k3 + 3.0));
        tg = x3 * tg / ((k3 + 3.0) * (k3 + 4.0));
        tgp = x3 * tgp / ((k3 + 1.0) * (k3 + 3.0));
        // fp terms start at k = 1
        tfp = x3 * tfp / ((k3 + 3.0) * (k3 + 5.0));
        out.f = out.f + tf;
        out.g = out.g + tg;
        out.fp = out.fp + tfp;
        out.gp = out.gp + tgp;
        double big = std::max({std::abs(tf.hi), std::abs(tg.hi), std::abs(tfp.hi), std::abs(tgp.hi)});
        peak = std::max(peak, big);
        if (k > 2 && big < 1e-34 * peak) break;
    }
    return out;
}

AiryEval series_eval(double x) {
    SeriesSums s = maclaurin(x);
    AiryEval e;
    e.x = x;
    DD c1f = kC1 * s.f;
    DD c2g = kC2 * s.g;
    DD c1fp = kC1 * s.fp;
    DD c2gp = kC2 * s.gp;
    DD ai = c1f - c2g;
    DD aip = c1fp - c2gp;
    DD bi = kSqrt3 * (c1f + c2g);
    DD bip = kSqrt3 * (c1fp + c2gp);
    e.ai = ai.hi + ai.lo;
    e.aip = aip.hi + aip.lo;
    e.bi = bi.hi + bi.lo;
    e.bip = bip.hi + bip.lo;
    return e;
}

constexpr int kAsymTerms = 64;

struct AsymCoeffs {
    std::array<double, kAsymTerms> u{};
    std::array<double, kAsymTerms> v{};
    AsymCoeffs() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kAsymTerms; ++k) {
            double kk = k;
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
            v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
        }
    }
};

const AsymCoeffs& asym() {
    static const AsymCoeffs c;
    return c;
}

// Sums c[k] * sign^k / zeta^k (sign = -1 for the alternating series), stopping
// at machine precision or at the smallest term.
double asym_sum(const std::array<double, kAsymTerms>& c, double zeta, double sign) {
    double sum = c[0];
    double pw = 1.0;
    double prev = std::abs(c[0]);
    double sgn = 1.0;
    for (int k = 1; k < kAsymTerms; ++k) {
        pw /= zeta;
        sgn *= sign;
        double term = sgn * c[k] * pw;
        if (std::abs(term) > prev) break;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        prev = std::abs(term);
    }
    return sum;
}

// Even/odd split sums for the oscillatory expansions:
// P = sum (-1)^k c[2k] zeta^{-2k}, Q = sum (-1)^k c[2k+1] zeta^{-2k-1}.
void asym_split(const std::array<double, kAsymTerms>& c, double zeta, double& p, double& q) {
    p = 0.0;
    q = 0.0;
    double pw = 1.0;
    double prev = 1e300;
    for (int k = 0; k < kAsymTerms; ++k) {
        double term = c[k] * pw;
        if (k > 0 && std::abs(term) > prev) break;
        int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0)
            p += sgn * term;
        else
            q += sgn * term;
        if (k > 1 && std::abs(term) < 1e-17) break;
        prev = std::abs(term);
        pw /= zeta;
    }
}

AiryEval asym_positive_scaled(double x) {
    const AsymCoeffs& c = asym();
    double zeta = airy_zeta(x);
    double q = std::sqrt(std::sqrt(x));
    AiryEval e;
    e.x = x;
    e.zeta = zeta;
    e.scaled = true;
    e.ai = 0.5 * kInvSqrtPi / q * asym_sum(c.u, zeta, -1.0);
    e.aip = -0.5 * kInvSqrtPi * q * asym_sum(c.v, zeta, -1.0);
    e.bi = kInvSqrtPi / q * asym_sum(c.u, zeta, 1.0);
    e.bip = kInvSqrtPi * q * asym_sum(c.v, zeta, 1.0);
    return e;
}

AiryEval asym_negative(double x) {
    const AsymCoeffs& c = asym();
    double z = -x;
    double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double q = std::sqrt(std::sqrt(z));
    double pu, qu, pv, qv;
    asym_split(c.u, zeta, pu, qu);
    asym_split(c.v, zeta, pv, qv);
    double phase = zeta - kPi / 4.0;
    double cs = std::cos(phase);
    double sn = std::sin(phase);
    AiryEval e;
    e.x = x;
    e.ai = kInvSqrtPi / q * (cs * pu + sn * qu);
    e.aip = kInvSqrtPi * q * (sn * pv - cs * qv);
    e.bi = kInvSqrtPi / q * (-sn * pu + cs * qu);
    e.bip = kInvSqrtPi * q * (cs * pv + sn * qv);
    return e;
}

void check_finite(double x) {
    if (!std::isfinite(x)) throw DomainError("airy: argument is not finite");
    if (x < -200.0) throw DomainError("airy: argument below -200");
}

} // namespace

double airy_zeta(double x) {
    if (x <= 0.0) return 0.0;
    return 2.0 / 3.0 * x * std::sqrt(x);
}

AiryEval airy_eval(double x) {
    check_finite(x);
    if (std::abs(x) <= kAirySeriesLimit) return series_eval(x);
    if (x < 0.0) return asym_negative(x);
    double zeta = airy_zeta(x);
    if (zeta > 700.0) throw OverflowRisk("airy: Bi(x) overflows for x above ~104");
    AiryEval e = asym_positive_scaled(x);
    double dec = std::exp(-zeta);
    double gro = std::exp(zeta);
    e.ai *= dec;
    e.aip *= dec;
    e.bi *= gro;
    e.bip *= gro;
    e.scaled = false;
    e.zeta = zeta;
    return e;
}

AiryEval airy_scaled(double x) {
    if (std::isnan(x)) throw DomainError("airy_scaled: argument is NaN");
    check_finite(x);
    if (x < 0.0) {
        AiryEval e = airy_eval(x);
        e.zeta = 0.0;
        return e;
    }
    if (x > kAirySeriesLimit) return asym_positive_scaled(x);
    AiryEval e = series_eval(x);
    double zeta = airy_zeta(x);
    double gro = std::exp(zeta);
    double dec = std::exp(-zeta);
    e.ai *= gro;
    e.aip *= gro;
    e.bi *= dec;
    e.bip *= dec;
    e.zeta = zeta;
    e.scaled = true;
    return e;
}

AiryEval airy_series_branch(double x) {
    check_finite(x);
    return series_eval(x);
}

AiryEval airy_asymptotic_branch(double x) {
    check_finite(x);
    if (std::abs(x) < 5.0) throw DomainError("airy_asymptotic_branch: needs |x| >= 5");
    if (x < 0.0) return asym_negative(x);
    AiryEval e = asym_positive_scaled(x);
    double zeta = e.zeta;
    e.ai *= std::exp(-zeta);
    e.aip *= std::exp(-zeta);
    e.bi *= std::exp(zeta);
    e.bip *= std::exp(zeta);
    e.scaled = false;
    return e;
}

AiryPair airy_ai(double x) {
    check_finite(x);
    if (x <= kAirySeriesLimit) {
        AiryEval e = (x < -kAirySeriesLimit) ? asym_negative(x) : series_eval(x);
        return {e.ai, e.aip};
    }
    AiryEval e = asym_positive_scaled(x);
    double dec = std::exp(-e.zeta);
    return {e.ai * dec, e.aip * dec};
}

} // namespace ncairy
