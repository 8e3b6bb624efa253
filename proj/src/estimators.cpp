#include "scalekit/estimators.hpp"
#include "scalekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace scalekit {

namespace {

// Neumaier compensated accumulator: error-free to first order regardless of
// term count or sign pattern.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_size(const std::vector<double>& xs, std::size_t min_n, const char* what) {
    if (xs.size() < min_n) {
        throw domain_error(std::string(what) + " requires at least " +
                           std::to_string(min_n) + " observations, got " +
                           std::to_string(xs.size()));
    }
}

std::vector<double> sorted_copy(const std::vector<double>& xs) {
    std::vector<double> s(xs);
    std::sort(s.begin(), s.end());
    return s;
}

// Empirical quantile at p = num/den (in lowest or any terms) under the
// interval-center convention, using exact integer arithmetic for the
// "n*p is an integer" test.
double quantile_sorted(const std::vector<double>& sorted, std::uint64_t num,
                       std::uint64_t den) {
    const std::uint64_t n = sorted.size();
    const std::uint64_t k = n * num; // n*p = k/den
    if (k % den == 0) {
        const std::uint64_t i = k / den; // 1-based lower index, 1 <= i < n
        return 0.5 * (sorted[i - 1] + sorted[i]);
    }
    const std::uint64_t i = k / den + 1; // ceil(n*p), 1-based
    return sorted[i - 1];
}

} // namespace

double sample_median_sorted(const std::vector<double>& sorted) {
    if (sorted.empty()) {
        throw domain_error("median of an empty sample");
    }
    return quantile_sorted(sorted, 1, 2);
}

double sample_median(const std::vector<double>& xs) {
    if (xs.empty()) {
        throw domain_error("median of an empty sample");
    }
    return sample_median_sorted(sorted_copy(xs));
}

double sd_n(const std::vector<double>& xs) {
    require_size(xs, 2, "sd");
    const std::size_t n = xs.size();
    CompensatedSum total;
    for (double x : xs) total.add(x);
    const double mean = total.value() / static_cast<double>(n);
    CompensatedSum ss;
    for (double x : xs) {
        const double d = x - mean;
        ss.add(d * d);
    }
    return std::sqrt(ss.value() / static_cast<double>(n - 1));
}

double mean_dev_n_sorted(const std::vector<double>& sorted, MeanDevScaling scaling) {
    require_size(sorted, 2, "mean deviation");
    const double med = sample_median_sorted(sorted);
    CompensatedSum acc;
    for (double x : sorted) acc.add(std::abs(x - med));
    const std::size_t n = sorted.size();
    const double denom =
        scaling == MeanDevScaling::Corrected ? static_cast<double>(n - 1)
                                             : static_cast<double>(n);
    return acc.value() / denom;
}

double mean_dev_n(const std::vector<double>& xs, MeanDevScaling scaling) {
    require_size(xs, 2, "mean deviation");
    return mean_dev_n_sorted(sorted_copy(xs), scaling);
}

double gini_n_sorted(const std::vector<double>& sorted) {
    require_size(sorted, 2, "gini mean difference");
    const std::size_t n = sorted.size();
    CompensatedSum acc;
    for (std::size_t i = 1; i <= n; ++i) {
        const double w = 2.0 * static_cast<double>(i) - static_cast<double>(n) - 1.0;
        acc.add(w * sorted[i - 1]);
    }
    return 2.0 * acc.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double gini_n(const std::vector<double>& xs) {
    require_size(xs, 2, "gini mean difference");
    return gini_n_sorted(sorted_copy(xs));
}

double gini_n_naive(const std::vector<double>& xs) {
    require_size(xs, 2, "gini mean difference");
    const std::size_t n = xs.size();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            acc.add(std::abs(xs[i] - xs[j]));
        }
    }
    return 2.0 * acc.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double iqr_n_sorted(const std::vector<double>& sorted) {
    require_size(sorted, 4, "iqr");
    return quantile_sorted(sorted, 3, 4) - quantile_sorted(sorted, 1, 4);
}

double iqr_n(const std::vector<double>& xs) {
    require_size(xs, 4, "iqr");
    return iqr_n_sorted(sorted_copy(xs));
}

} // namespace scalekit
