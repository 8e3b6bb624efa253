#pragma once

// Relative-efficiency surfaces over the normal-mixture (lambda, epsilon)
// plane and equal-efficiency contamination thresholds located by bisection.

#include "scalekit/distributions.hpp"
#include "scalekit/estimators.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace scalekit {

enum class EfficiencyPair { GiniVsSd, MeanDevVsSd, GiniVsMeanDev };

// CSV/CLI names: "gini-sd", "meandev-sd", "gini-meandev".
const char* pair_name(EfficiencyPair pair);
EfficiencyPair parse_pair(const std::string& text);

struct IsoCurvePoint {
    double lambda;
    double epsilon;
    EfficiencyPair pair;
};

struct IsoCurveResult {
    std::vector<IsoCurvePoint> points;
    std::vector<double> skipped_lambdas; // grid values with no crossing
};

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

// Expand a range into its grid values (endpoints included). count == 1 is
// allowed only for a degenerate range (lo == hi).
std::vector<double> axis_values(const AxisRange& range);

struct SurfaceGrid {
    std::vector<double> lambda_axis;
    std::vector<double> log10_eps_axis;
    // Row-major: values[i * log10_eps_axis.size() + j] belongs to
    // (lambda_axis[i], log10_eps_axis[j]).
    std::vector<double> values;
};

// Smallest epsilon in (1e-8, 0.5) at which the pair's efficiencies cross,
// located by a left-to-right scan in log10(eps) followed by bisection
// (relative accuracy ~1e-9; the efficiency gap at the returned point is
// below 1e-8). The gap can cross zero twice on (0,1); the scan direction
// deliberately picks the small-contamination crossing. Throws domain_error
// when no sign change exists in the bracket (lambda too close to 1).
double epsilon_star(double lambda, EfficiencyPair pair);

// are(kind, NormalMixture(lambda, 10^t)) over the tensor grid. kind must
// not be Sd (identically 1). Rows are distributed across OpenMP threads;
// cell values do not depend on the thread count.
SurfaceGrid are_surface(ScaleKind kind, const AxisRange& lambda_range,
                        const AxisRange& log10_eps_range);

// Single-threaded reference of the same surface, kept for validation and
// benchmarking of the parallel kernel.
SurfaceGrid are_surface_reference(ScaleKind kind, const AxisRange& lambda_range,
                                  const AxisRange& log10_eps_range);

// epsilon_star along a grid of lambdas; lambdas without a crossing are
// collected in skipped_lambdas instead of aborting the curve.
IsoCurveResult iso_curve(EfficiencyPair pair,
                         const std::vector<double>& lambda_grid);

} // namespace scalekit
