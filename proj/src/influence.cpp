#include "scalekit/influence.hpp"

#include "scalekit/closedform.hpp"
#include "scalekit/errors.hpp"

#include <cmath>

namespace scalekit {

double influence_value(ScaleKind kind, const DistributionSpec& dist, double x) {
    switch (kind) {
    case ScaleKind::Sd: {
        const MomentSet m = moments(dist);
        const double centered = x - m.mu1;
        return (centered * centered - m.sigma2) / (2.0 * std::sqrt(m.sigma2));
    }
    case ScaleKind::MeanDev: {
        // The median equals the symmetry center for every supported family.
        return std::fabs(x - symmetry_center(dist)) - population_d(dist);
    }
    case ScaleKind::Gini: {
        const double mu1 = moments(dist).mu1;
        const double upper_mean = truncated_mean_above(dist, x);
        return 2.0 * (x * (2.0 * cdf(dist, x) - 1.0) + 2.0 * upper_mean - mu1 -
                      population_g(dist));
    }
    default:
        throw domain_error("no influence function is provided for the iqr");
    }
}

InfluenceCurve influence_curve(ScaleKind kind, const DistributionSpec& dist,
                               double x_min, double x_max, std::size_t points) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        throw domain_error("influence grid needs finite bounds with x_min < x_max");
    }
    if (points < 2) {
        throw domain_error("influence grid needs at least 2 points");
    }
    InfluenceCurve curve{kind, dist, {}};
    curve.grid.reserve(points);
    const double denom = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        // Convex blend keeps endpoints exact and symmetric ranges symmetric.
        const double w = static_cast<double>(i);
        const double x = ((denom - w) * x_min + w * x_max) / denom;
        curve.grid.push_back({x, influence_value(kind, dist, x)});
    }
    return curve;
}

} // namespace scalekit
