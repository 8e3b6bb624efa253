#include "scalekit/curves.hpp"

#include "scalekit/closedform.hpp"
#include "scalekit/errors.hpp"

#include <cmath>
#include <cstdio>

namespace scalekit {

const char* pair_name(EfficiencyPair pair) {
    switch (pair) {
    case EfficiencyPair::GiniVsSd:
        return "gini-sd";
    case EfficiencyPair::MeanDevVsSd:
        return "meandev-sd";
    case EfficiencyPair::GiniVsMeanDev:
        return "gini-meandev";
    }
    throw domain_error("unknown efficiency pair");
}

EfficiencyPair parse_pair(const std::string& text) {
    if (text == "gini-sd") return EfficiencyPair::GiniVsSd;
    if (text == "meandev-sd") return EfficiencyPair::MeanDevVsSd;
    if (text == "gini-meandev") return EfficiencyPair::GiniVsMeanDev;
    throw domain_error("unknown efficiency pair '" + text +
                       "' (expected gini-sd, meandev-sd or gini-meandev)");
}

namespace {

// Signed efficiency gap whose zero defines the threshold: first member of
// the pair minus the second, both as efficiencies relative to the sd.
double efficiency_gap(EfficiencyPair pair, double lambda, double epsilon) {
    const DistributionSpec dist{NormalMixture{lambda, epsilon}};
    switch (pair) {
    case EfficiencyPair::GiniVsSd:
        return are(ScaleKind::Gini, dist) - 1.0;
    case EfficiencyPair::MeanDevVsSd:
        return are(ScaleKind::MeanDev, dist) - 1.0;
    case EfficiencyPair::GiniVsMeanDev:
        return are(ScaleKind::Gini, dist) - are(ScaleKind::MeanDev, dist);
    }
    throw domain_error("unknown efficiency pair");
}

} // namespace

std::vector<double> axis_values(const AxisRange& range) {
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi) ||
        range.hi < range.lo) {
        throw domain_error("axis range needs finite lo <= hi");
    }
    if (range.count == 0) {
        throw domain_error("axis range needs at least one point");
    }
    if (range.count == 1) {
        if (range.lo != range.hi) {
            throw domain_error("a single-point axis needs lo == hi");
        }
        return {range.lo};
    }
    std::vector<double> values;
    values.reserve(range.count);
    const double denom = static_cast<double>(range.count - 1);
    for (std::size_t i = 0; i < range.count; ++i) {
        const double w = static_cast<double>(i);
        values.push_back(((denom - w) * range.lo + w * range.hi) / denom);
    }
    return values;
}

double epsilon_star(double lambda, EfficiencyPair pair) {
    if (!(lambda > 1.0)) {
        throw domain_error("equal-efficiency threshold needs lambda > 1");
    }
    // Scan log10(eps) left to right for the first sign change, then bisect.
    // The gap can return to zero near eps ~ 0.5; starting from 1e-8 selects
    // the small-contamination crossing.
    constexpr int kScanSteps = 512;
    const double t_lo = -8.0;
    const double t_hi = std::log10(0.5);
    double left_t = t_lo;
    double left_gap = efficiency_gap(pair, lambda, std::pow(10.0, t_lo));
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double t =
            t_lo + (t_hi - t_lo) * static_cast<double>(i) / kScanSteps;
        const double gap = efficiency_gap(pair, lambda, std::pow(10.0, t));
        if (gap == 0.0) return std::pow(10.0, t);
        if ((left_gap < 0.0) != (gap < 0.0)) {
            bracket_lo = left_t;
            bracket_hi = t;
            bracketed = true;
            break;
        }
        left_t = t;
        left_gap = gap;
    }
    if (!bracketed) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "no equal-efficiency crossing of %s for lambda=%g with "
                      "eps in (1e-8, 0.5)",
                      pair_name(pair), lambda);
        throw domain_error(msg);
    }

    // Bisect until the bracket width corresponds to a relative eps
    // resolution of ~1e-9 (log10(1 + 1e-9) ~ 4.3e-10).
    constexpr double kLogWidthTol = 4.3e-10;
    double lo_gap = efficiency_gap(pair, lambda, std::pow(10.0, bracket_lo));
    while (bracket_hi - bracket_lo > kLogWidthTol) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        if (mid <= bracket_lo || mid >= bracket_hi) break;
        const double mid_gap = efficiency_gap(pair, lambda, std::pow(10.0, mid));
        if (mid_gap == 0.0) return std::pow(10.0, mid);
        if ((lo_gap < 0.0) == (mid_gap < 0.0)) {
            bracket_lo = mid;
            lo_gap = mid_gap;
        } else {
            bracket_hi = mid;
        }
    }
    return std::pow(10.0, 0.5 * (bracket_lo + bracket_hi));
}

namespace {

SurfaceGrid make_surface_shell(ScaleKind kind, const AxisRange& lambda_range,
                               const AxisRange& log10_eps_range) {
    if (kind == ScaleKind::Sd) {
        throw domain_error("the surface of sd against itself is identically 1");
    }
    if (!(lambda_range.lo >= 1.0)) {
        throw domain_error("surface lambda range must start at >= 1");
    }
    if (!(log10_eps_range.hi <= 0.0)) {
        throw domain_error("surface log10(eps) range must stay <= 0");
    }
    if (lambda_range.count < 2 || log10_eps_range.count < 2) {
        throw domain_error("surface needs at least 2 points per axis");
    }
    SurfaceGrid grid;
    grid.lambda_axis = axis_values(lambda_range);
    grid.log10_eps_axis = axis_values(log10_eps_range);
    grid.values.assign(grid.lambda_axis.size() * grid.log10_eps_axis.size(),
                       0.0);
    return grid;
}

double surface_cell(ScaleKind kind, double lambda, double log10_eps) {
    const DistributionSpec dist{
        NormalMixture{lambda, std::pow(10.0, log10_eps)}};
    return are(kind, dist);
}

} // namespace

SurfaceGrid are_surface(ScaleKind kind, const AxisRange& lambda_range,
                        const AxisRange& log10_eps_range) {
    SurfaceGrid grid = make_surface_shell(kind, lambda_range, log10_eps_range);
    const int rows = static_cast<int>(grid.lambda_axis.size());
    const int cols = static_cast<int>(grid.log10_eps_axis.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            grid.values[static_cast<std::size_t>(i) * cols + j] =
                surface_cell(kind, grid.lambda_axis[i], grid.log10_eps_axis[j]);
        }
    }
    return grid;
}

SurfaceGrid are_surface_reference(ScaleKind kind, const AxisRange& lambda_range,
                                  const AxisRange& log10_eps_range) {
    SurfaceGrid grid = make_surface_shell(kind, lambda_range, log10_eps_range);
    const std::size_t cols = grid.log10_eps_axis.size();
    for (std::size_t i = 0; i < grid.lambda_axis.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            grid.values[i * cols + j] =
                surface_cell(kind, grid.lambda_axis[i], grid.log10_eps_axis[j]);
        }
    }
    return grid;
}

IsoCurveResult iso_curve(EfficiencyPair pair,
                         const std::vector<double>& lambda_grid) {
    IsoCurveResult result;
    for (const double lambda : lambda_grid) {
        try {
            result.points.push_back({lambda, epsilon_star(lambda, pair), pair});
        } catch (const domain_error&) {
            result.skipped_lambdas.push_back(lambda);
        }
    }
    return result;
}

} // namespace scalekit
