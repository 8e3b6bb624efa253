#pragma once

// Influence functions of the scale functionals: the first-order change of
// sigma(.), d(.) and g(.) under an infinitesimal point contamination at x.
// The finite-difference construction in the oracle module approximates the
// same limit without using these formulas.

#include "scalekit/distributions.hpp"
#include "scalekit/estimators.hpp"

#include <cstddef>
#include <vector>

namespace scalekit {

struct InfluencePoint {
    double x;
    double if_value;
};

struct InfluenceCurve {
    ScaleKind kind;
    DistributionSpec dist;
    std::vector<InfluencePoint> grid;
};

// Influence value at contamination point x:
//   Sd:      ((x - mu)^2 - sigma^2) / (2 sigma)
//   MeanDev: |x - m| - d(F)                       (m the median)
//   Gini:    2{ x(2F(x) - 1) + 2T(x) - mu1 - g(F) },  T(x) = E[X 1_{X>=x}]
// The sd response is quadratic in x, the other two grow linearly; the
// mean-deviation curve has a kink at the median while the Gini curve is
// smooth there. Iqr is not covered and is rejected.
double influence_value(ScaleKind kind, const DistributionSpec& dist, double x);

// Evaluate on a uniform grid of `points` nodes spanning [x_min, x_max]
// (endpoints included; symmetric ranges produce exactly symmetric nodes).
InfluenceCurve influence_curve(ScaleKind kind, const DistributionSpec& dist,
                               double x_min, double x_max, std::size_t points);

} // namespace scalekit
