#pragma once

// Sample versions of the four scale measures: standard deviation (1/(n-1)),
// mean absolute deviation about the median (1/(n-1) or 1/n), Gini's mean
// difference (average absolute pairwise difference) and the interquartile
// range. Empirical quantiles use the interval-center convention: at p with
// n*p integer, the midpoint of the two adjacent order statistics; otherwise
// the ceil(n*p)-th order statistic. All accumulations are compensated
// (Neumaier) so the O(n^2)-vs-O(n log n) equivalence holds to 1e-12 relative.

#include <cstddef>
#include <vector>

namespace scalekit {

// Names the scale functional an estimator targets; used across the
// closed-form, influence and Monte Carlo modules.
enum class ScaleKind { Sd, MeanDev, Gini, Iqr };

enum class MeanDevScaling {
    Corrected, // 1/(n-1)
    Plain,     // 1/n
};

// Interval-center median: x_((n+1)/2) for odd n, midpoint of the two middle
// order statistics for even n. Throws domain_error on an empty sample.
double sample_median(const std::vector<double>& xs);

// sqrt( sum (x_i - mean)^2 / (n-1) ), n >= 2.
double sd_n(const std::vector<double>& xs);

// sum |x_i - median| / (n-1)  (Corrected) or / n (Plain), n >= 2.
double mean_dev_n(const std::vector<double>& xs, MeanDevScaling scaling);

// 2/(n(n-1)) * sum_{i<j} |x_i - x_j| via the sorted identity
// sum_{i<j} |x_i - x_j| = sum_i (2i - n - 1) x_(i); O(n log n), n >= 2.
double gini_n(const std::vector<double>& xs);

// Direct O(n^2) pairwise loop; anti-regression oracle for gini_n.
double gini_n_naive(const std::vector<double>& xs);

// Upper minus lower empirical quartile (interval-center rule), n >= 4.
double iqr_n(const std::vector<double>& xs);

// Variants that take already-sorted input (ascending) and skip the copy+sort;
// used by the Monte Carlo hot loop. Preconditions otherwise identical.
double sample_median_sorted(const std::vector<double>& sorted);
double mean_dev_n_sorted(const std::vector<double>& sorted, MeanDevScaling scaling);
double gini_n_sorted(const std::vector<double>& sorted);
double iqr_n_sorted(const std::vector<double>& sorted);

} // namespace scalekit
