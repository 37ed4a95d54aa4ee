#pragma once

namespace ncairy {

// Values of Ai, Ai', Bi, Bi' at a real point. When scaled is set, ai/aip
// carry a factor exp(zeta) and bi/bip carry exp(-zeta).
struct AiryEval {
    double x = 0.0;
    double ai = 0.0;
    double aip = 0.0;
    double bi = 0.0;
    double bip = 0.0;
    double zeta = 0.0;
    bool scaled = false;
};

struct AiryPair {
    double ai = 0.0;
    double aip = 0.0;
};

// |x| at or below this is summed as a power series; beyond it the
// asymptotic expansions take over.
inline constexpr double kAirySeriesLimit = 9.5;

// Unscaled values. Throws DomainError for non-finite x or x < -200 and
// OverflowRisk when Bi(x) would exceed the double range.
AiryEval airy_eval(double x);

// Scaled values for x >= 0; unscaled values with zeta = 0 for x < 0.
AiryEval airy_scaled(double x);

// Ai and Ai' only. Never overflows; underflows to zero for large x.
AiryPair airy_ai(double x);

double airy_zeta(double x);

// The two evaluation branches on their own, unscaled, for seam checks. The
// asymptotic branch needs |x| >= 5.
AiryEval airy_series_branch(double x);
AiryEval airy_asymptotic_branch(double x);

} // namespace ncairy
