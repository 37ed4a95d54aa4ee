#pragma once

#include <variant>
#include <vector>

namespace ncairy {

struct HalfLine {
    double cutoff = 40.0;
};

struct Interval {
    double a = -1.0;
    double b = 1.0;
};

struct ContourRay {
    double angle = 0.0;
    double radius = 0.0;
};

using QuadratureDomain = std::variant<HalfLine, Interval, ContourRay>;

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureDomain domain = Interval{};

    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on [-1, 1], 2 <= m <= 512.
QuadratureRule gauss_legendre(int m);

// Gauss-Legendre rule mapped affinely to [a, b].
QuadratureRule gauss_legendre(int m, double a, double b);

// Gauss-Legendre rule on [0, cutoff], tagged as a half-line truncation.
QuadratureRule half_line_rule(int m, double cutoff);

} // namespace ncairy
