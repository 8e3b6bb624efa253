// End-to-end acceptance runner: ten numbered release criteria, each printed
// as one [PASS]/[FAIL] line (failing comparisons listed underneath), exit
// code = number of failed criteria. All tolerances are pinned here, next to
// the embedded reference values they gate.
//
//   --reps N        Monte Carlo replications per study cell (default 10000)
//   --paper-scale   shorthand for --reps 100000

#include "scalekit/closedform.hpp"
#include "scalekit/curves.hpp"
#include "scalekit/distributions.hpp"
#include "scalekit/errors.hpp"
#include "scalekit/estimators.hpp"
#include "scalekit/montecarlo.hpp"
#include "scalekit/oracle.hpp"
#include "scalekit/rng.hpp"
#include "scalekit/special.hpp"
#include "scalekit/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace scalekit;

constexpr double kPi = 3.14159265358979323846;

// Reference tables are quoted to six decimals, so agreement is gated at half
// an ulp of the print format.
constexpr double kSixDecimalTol = 5e-7;

struct Criterion {
    int number = 0;
    std::string title;
    int comparisons = 0;
    std::vector<std::string> failure_lines;

    bool passed() const { return failure_lines.empty(); }

    void expect_near(const char* what, double actual, double expected,
                     double tol) {
        ++comparisons;
        if (std::isfinite(actual) && std::fabs(actual - expected) <= tol)
            return;
        char line[512];
        std::snprintf(line, sizeof(line),
                      "%s: got %.10g, want %.10g +- %.3g (off by %.3g)", what,
                      actual, expected, tol, std::fabs(actual - expected));
        failure_lines.push_back(line);
    }

    void expect_true(const std::string& what, bool ok) {
        ++comparisons;
        if (!ok) failure_lines.push_back(what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// A stalled adaptive pass still carries its best estimate; the comparison
// below is the actual contract.
double best_effort_real_line(const std::function<double(double)>& f,
                             double tol) {
    try {
        return integrate_real_line(f, tol).value;
    } catch (const accuracy_error& e) {
        return e.best_estimate;
    }
}

// --- embedded reference values ---------------------------------------------

struct PopulationRow {
    const char* spec;
    double sigma, g, d, asv_sd, asv_g, asv_d;
};

const PopulationRow kPopulationReference[] = {
    {"normal", 1.0, 1.128379, 0.797884, 0.5, 0.651006, 0.36338},
    {"laplace", 1.414214, 1.5, 1.0, 2.5, 2.333333, 1.0},
    {"uniform:0,1", 0.288675, 0.333333, 0.25, 0.016667, 0.022222, 0.020833},
    {"t:5", 1.290994, 1.383983, 0.949017, 3.333333, 1.784415, 0.766034},
    {"t:6", 1.224745, 1.331554, 0.918559, 1.875, 1.453316, 0.656250},
    {"t:7", 1.183216, 1.29694, 0.898313, 1.4, 1.268881, 0.593033},
    {"t:10", 1.118034, 1.239891, 0.864685, 0.9375, 1.013824, 0.502319},
    {"t:15", 1.074172, 1.199657, 0.840757, 0.734266, 0.864755, 0.446974},
    {"t:16", 1.069045, 1.194859, 0.837891, 0.714286, 0.848464, 0.440796},
    {"t:25", 1.042572, 1.169776, 0.822862, 0.621118, 0.768006, 0.409855},
    {"t:40", 1.025978, 1.153794, 0.813245, 0.570175, 0.720625, 0.391264},
    {"t:41", 1.025320, 1.153156, 0.812861, 0.568261, 0.718794, 0.390540},
    {"t:100", 1.010153, 1.138367, 0.803932, 0.526148, 0.677563, 0.374102},
    {"nm:3,0.008", 1.031504, 1.150661, 0.810651, 0.890015, 0.791360, 0.406845},
    {"nm:3,0.00175", 1.006976, 1.133259, 0.800677, 0.589695, 0.681919,
     0.372916},
    {"nm:3,0.000309", 1.001235, 1.129241, 0.798378, 0.516028, 0.656474,
     0.365065},
};

struct EfficiencyRow {
    const char* spec;
    double are_g, are_d, are_iqr;
};

const EfficiencyRow kEfficiencyReference[] = {
    {"normal", 0.977901, 0.875969, 0.367529},
    {"laplace", 1.205357, 1.25, 0.600566},
    {"uniform:0,1", 1.0, 0.6, 0.2},
    {"t:5", 2.146820, 2.351417, 1.333182},
    {"t:6", 1.524991, 1.607143, 0.847705},
    {"t:7", 1.325620, 1.360745, 0.686402},
    {"t:10", 1.137276, 1.116343, 0.525866},
    {"t:15", 1.059075, 1.006384, 0.453437},
    {"t:16", 1.051672, 0.995444, 0.446226},
    {"t:25", 1.018130, 0.944031, 0.412339},
    {"t:40", 1.000643, 0.915598, 0.393605},
    {"t:41", 0.9999998, 0.914524, 0.392898},
    {"t:100", 0.986164, 0.890804, 0.377281},
    {"nm:3,0.008", 1.399511, 1.351120, 0.627943},
    {"nm:3,0.00175", 1.095255, 0.999755, 0.429469},
    {"nm:3,0.000309", 0.999901, 0.898767, 0.378687},
};

// Simulated finite-sample references (three decimals, original study ran
// 100000 replications) at n = 5, 8, 10, 50, 500. Monte Carlo agreement is
// gated at four combined standard errors plus the print-rounding margin; the
// exact "(true)" rows for Gini's mean difference are gated deterministically.
const std::size_t kStudySampleSizes[5] = {5, 8, 10, 50, 500};

struct SimulatedRow {
    const char* spec;
    double sd_nvar[5];
    double g_emp[5];
    double g_true[5];
    double g_rel[5];
    double d_nvar[5];
    double d_rel[5];
};

const SimulatedRow kSimulatedReference[] = {
    {"normal",
     {0.577, 0.548, 0.541, 0.507, 0.505},
     {0.850, 0.767, 0.743, 0.666, 0.655},
     {0.852, 0.766, 0.740, 0.667, 0.653},
     {0.986, 0.982, 0.980, 0.979, 0.978},
     {0.482, 0.454, 0.427, 0.374, 0.365},
     {0.938, 0.902, 0.894, 0.880, 0.876}},
    {"laplace",
     {1.946, 2.076, 2.134, 2.387, 2.495},
     {2.629, 2.514, 2.456, 2.359, 2.345},
     {2.625, 2.500, 2.463, 2.357, 2.336},
     {1.037, 1.071, 1.088, 1.167, 1.201},
     {1.343, 1.232, 1.169, 1.041, 1.005},
     {1.061, 1.101, 1.123, 1.206, 1.245}},
    {"uniform:0,1",
     {0.031, 0.025, 0.022, 0.018, 0.017},
     {0.045, 0.035, 0.032, 0.024, 0.023},
     {0.044, 0.035, 0.032, 0.024, 0.022},
     {0.985, 0.967, 0.962, 0.985, 0.998},
     {0.030, 0.028, 0.026, 0.022, 0.021},
     {0.829, 0.694, 0.672, 0.614, 0.603}},
    {"t:5",
     {1.584, 1.686, 1.762, 2.313, 2.880},
     {2.050, 1.942, 1.890, 1.805, 1.790},
     {2.047, 1.935, 1.901, 1.806, 1.787},
     {1.073, 1.150, 1.185, 1.499, 1.811},
     {1.036, 0.949, 0.901, 0.791, 0.760},
     {1.105, 1.208, 1.282, 1.673, 1.977}},
    {"t:16",
     {0.745, 0.722, 0.722, 0.710, 0.705},
     {1.064, 0.977, 0.949, 0.862, 0.850},
     {1.065, 0.972, 0.945, 0.866, 0.850},
     {0.999, 1.009, 1.016, 1.043, 1.050},
     {0.588, 0.547, 0.517, 0.454, 0.445},
     {0.972, 0.956, 0.963, 0.989, 0.991}},
    {"t:41",
     {0.640, 0.611, 0.605, 0.574, 0.575},
     {0.925, 0.835, 0.817, 0.740, 0.720},
     {0.925, 0.837, 0.811, 0.736, 0.720},
     {0.990, 0.992, 0.991, 0.999, 1.001},
     {0.519, 0.482, 0.462, 0.399, 0.390},
     {0.950, 0.918, 0.921, 0.916, 0.919}},
    {"nm:3,0.008",
     {0.710, 0.698, 0.711, 0.815, 0.875},
     {0.997, 0.910, 0.876, 0.804, 0.790},
     {0.996, 0.908, 0.882, 0.808, 0.793},
     {1.023, 1.060, 1.083, 1.257, 1.385},
     {0.540, 0.507, 0.480, 0.423, 0.405},
     {1.000, 1.016, 1.039, 1.204, 1.332}},
    {"nm:3,0.00175",
     {0.617, 0.587, 0.576, 0.573, 0.590},
     {0.889, 0.791, 0.764, 0.704, 0.675},
     {0.883, 0.797, 0.771, 0.698, 0.684},
     {0.995, 1.002, 1.009, 1.056, 1.092},
     {0.500, 0.462, 0.441, 0.385, 0.370},
     {0.951, 0.931, 0.931, 0.971, 0.992}},
    {"nm:3,0.000309",
     {0.584, 0.558, 0.543, 0.517, 0.515},
     {0.853, 0.775, 0.744, 0.667, 0.655},
     {0.857, 0.771, 0.746, 0.673, 0.658},
     {0.986, 0.986, 0.985, 0.993, 0.999},
     {0.484, 0.452, 0.434, 0.375, 0.365},
     {0.941, 0.900, 0.903, 0.899, 0.903}},
};

// --- criteria ---------------------------------------------------------------

void criterion_population_table(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    char what[96];
    for (const PopulationRow& row : kPopulationReference) {
        const DistributionSpec dist = parse_distribution(row.spec);
        const PopulationSummary s = summarize(dist);
        std::snprintf(what, sizeof(what), "%s sigma", row.spec);
        c.expect_near(what, s.sigma, row.sigma, kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s g", row.spec);
        c.expect_near(what, s.g, row.g, kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s d", row.spec);
        c.expect_near(what, s.d, row.d, kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s asv(sd)", row.spec);
        c.expect_near(what, s.asv_sd, row.asv_sd, kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s asv(gini)", row.spec);
        c.expect_near(what, s.asv_g, row.asv_g, kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s asv(meandev)", row.spec);
        c.expect_near(what, s.asv_d, row.asv_d, kSixDecimalTol);
    }
    const double secs = seconds_since(t0);
    char msg[96];
    std::snprintf(msg, sizeof(msg),
                  "summaries finished in %.2f s (limit 10 s)", secs);
    c.expect_true(msg, secs < 10.0);
}

void criterion_efficiency_table(Criterion& c) {
    char what[96];
    for (const EfficiencyRow& row : kEfficiencyReference) {
        const DistributionSpec dist = parse_distribution(row.spec);
        std::snprintf(what, sizeof(what), "%s are(gini)", row.spec);
        c.expect_near(what, are(ScaleKind::Gini, dist), row.are_g,
                      kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s are(meandev)", row.spec);
        c.expect_near(what, are(ScaleKind::MeanDev, dist), row.are_d,
                      kSixDecimalTol);
        std::snprintf(what, sizeof(what), "%s are(iqr)", row.spec);
        c.expect_near(what, are(ScaleKind::Iqr, dist), row.are_iqr,
                      kSixDecimalTol);
    }
}

void criterion_closed_form_constants(Criterion& c) {
    const DistributionSpec normal = parse_distribution("normal");
    const DistributionSpec laplace = parse_distribution("laplace");
    c.expect_near("normal are(gini) vs 1/(2 pi/3 + 4 (sqrt(3) - 2))",
                  are(ScaleKind::Gini, normal),
                  1.0 / (2.0 * kPi / 3.0 + 4.0 * (std::sqrt(3.0) - 2.0)),
                  1e-12);
    c.expect_near("normal are(meandev) vs 1/(pi - 2)",
                  are(ScaleKind::MeanDev, normal), 1.0 / (kPi - 2.0), 1e-12);
    c.expect_near("laplace are(gini) vs 135/112",
                  are(ScaleKind::Gini, laplace), 135.0 / 112.0, 1e-12);
    c.expect_near("laplace are(meandev) vs 5/4",
                  are(ScaleKind::MeanDev, laplace), 1.25, 1e-12);
}

void criterion_thresholds(Criterion& c) {
    c.expect_near("epsilon_star(lambda=3, meandev-sd)",
                  epsilon_star(3.0, EfficiencyPair::MeanDevVsSd), 0.00175,
                  5e-6);
    c.expect_near("epsilon_star(lambda=3, gini-sd)",
                  epsilon_star(3.0, EfficiencyPair::GiniVsSd), 0.000309, 2e-6);
    c.expect_near("nm:3,0.008 are(meandev)",
                  are(ScaleKind::MeanDev, parse_distribution("nm:3,0.008")),
                  1.351120, 1e-6);
}

void criterion_normal_gap_integral(Criterion& c) {
    const double i1 = best_effort_real_line(
        [](double x) {
            const double F = std_normal_cdf(x);
            return x * x * std_normal_pdf(x) * F * F;
        },
        1e-11);
    c.expect_near("int x^2 phi(x) Phi(x)^2 dx vs 1/3 + 1/(2 pi sqrt(3))", i1,
                  1.0 / 3.0 + 1.0 / (2.0 * kPi * std::sqrt(3.0)), 1e-10);
    c.expect_near("normal-family J = 3 I1 - 7/6 vs sqrt(3)/(2 pi) - 1/6",
                  3.0 * i1 - 7.0 / 6.0,
                  std::sqrt(3.0) / (2.0 * kPi) - 1.0 / 6.0, 1e-10);
}

bool name_starts_with(const std::string& name, const char* prefix) {
    return std::strncmp(name.c_str(), prefix, std::strlen(prefix)) == 0;
}

void append_check_failure(Criterion& c, const VerifyCheck& check) {
    char line[320];
    std::snprintf(line, sizeof(line), "%s: got %.10g, want %.10g +- %.2g",
                  check.name.c_str(), check.actual, check.expected,
                  check.tolerance);
    c.failure_lines.push_back(line);
}

void criterion_oracle_battery(Criterion& c, const VerifyReport& report,
                              double secs) {
    for (const VerifyCheck& check : report.checks) {
        if (name_starts_with(check.name, "IF-")) continue;
        ++c.comparisons;
        if (!check.passed) append_check_failure(c, check);
    }
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "distinct parameter combinations with g and J re-derived by "
                  "quadrature: %zu (need >= 60)",
                  report.gj_combinations);
    c.expect_true(msg, report.gj_combinations >= 60);
    std::snprintf(msg, sizeof(msg),
                  "battery finished in %.1f s (limit 180 s)", secs);
    c.expect_true(msg, secs < 180.0);
}

void criterion_exact_finite_sample_variance(Criterion& c) {
    const double normal_rows[5] = {0.852, 0.766, 0.740, 0.667, 0.653};
    const double laplace_rows[5] = {2.625, 2.500, 2.463, 2.357, 2.336};
    const DistributionSpec normal = parse_distribution("normal");
    const DistributionSpec laplace = parse_distribution("laplace");
    char what[96];
    for (int i = 0; i < 5; ++i) {
        const std::size_t n = kStudySampleSizes[i];
        std::snprintf(what, sizeof(what), "normal n=%zu n*var(gini) exact", n);
        c.expect_near(what, static_cast<double>(n) * lomnicki_var(normal, n),
                      normal_rows[i], 5e-4);
        std::snprintf(what, sizeof(what), "laplace n=%zu n*var(gini) exact", n);
        c.expect_near(what, static_cast<double>(n) * lomnicki_var(laplace, n),
                      laplace_rows[i], 5e-4);
    }
}

void criterion_monte_carlo(Criterion& c, std::size_t reps) {
    // The reference study ran 100000 replications with an unknown generator,
    // so its values carry their own Monte Carlo error of roughly
    // se_here * sqrt(reps/100000); four combined standard errors plus the
    // three-decimal print rounding is the gate.
    const double inflation = std::sqrt(1.0 + static_cast<double>(reps) / 1e5);
    const double rounding = 5e-4;
    char what[256];
    for (const SimulatedRow& row : kSimulatedReference) {
        const DistributionSpec dist = parse_distribution(row.spec);
        for (int i = 0; i < 5; ++i) {
            const std::size_t n = kStudySampleSizes[i];
            const CellStats cell = run_cell(dist, n, reps, 20230417);
            const auto gate = [&](const char* label, double actual,
                                  double expected, double se) {
                std::snprintf(what, sizeof(what), "%s n=%zu %s", row.spec, n,
                              label);
                c.expect_near(what, actual, expected,
                              4.0 * se * inflation + rounding);
            };
            gate("sd n*variance", cell.sd.n_times_variance, row.sd_nvar[i],
                 cell.sd.se_n_times_variance);
            gate("gini n*variance (simulated)", cell.gini.n_times_variance,
                 row.g_emp[i], cell.gini.se_n_times_variance);
            gate("meandev n*variance", cell.meandev.n_times_variance,
                 row.d_nvar[i], cell.meandev.se_n_times_variance);
            gate("gini efficiency vs sd", cell.gini.rel_efficiency_vs_sd,
                 row.g_rel[i], cell.gini.se_rel_efficiency);
            gate("meandev efficiency vs sd", cell.meandev.rel_efficiency_vs_sd,
                 row.d_rel[i], cell.meandev.se_rel_efficiency);
            std::snprintf(what, sizeof(what),
                          "%s n=%zu gini n*variance (exact)", row.spec, n);
            c.expect_near(what, cell.gini_true_n_times_variance, row.g_true[i],
                          rounding);
            // At small n the 1/n-scaled mean deviation is the only estimator
            // whose bias is a first-order effect.
            if (n <= 10) {
                const double b = cell.meandev_plain.bias2_over_variance;
                std::snprintf(
                    what, sizeof(what),
                    "%s n=%zu: 1/n-scaled meandev bias^2/variance (%.3g) "
                    "dominates sd (%.3g), gini (%.3g), meandev (%.3g)",
                    row.spec, n, b, cell.sd.bias2_over_variance,
                    cell.gini.bias2_over_variance,
                    cell.meandev.bias2_over_variance);
                c.expect_true(what, b > cell.sd.bias2_over_variance &&
                                        b > cell.gini.bias2_over_variance &&
                                        b > cell.meandev.bias2_over_variance);
            }
        }
    }
}

void criterion_influence_battery(Criterion& c, const VerifyReport& report) {
    std::size_t mean_zero = 0, second_moment = 0, finite_diff = 0;
    for (const VerifyCheck& check : report.checks) {
        if (!name_starts_with(check.name, "IF-")) continue;
        ++c.comparisons;
        if (name_starts_with(check.name, "IF-mean-zero")) ++mean_zero;
        if (name_starts_with(check.name, "IF-second-moment")) ++second_moment;
        if (name_starts_with(check.name, "IF-fd")) ++finite_diff;
        if (!check.passed) append_check_failure(c, check);
    }
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "coverage: %zu zero-mean, %zu second-moment, %zu "
                  "finite-difference checks (need >= 21/19/45)",
                  mean_zero, second_moment, finite_diff);
    c.expect_true(msg,
                  mean_zero >= 21 && second_moment >= 19 && finite_diff >= 45);
}

// Pairwise-difference form of the sample standard deviation:
// s^2 = sum_{i<j} (x_i - x_j)^2 / (n (n-1)), compensated summation.
double sd_pairwise(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double term = (xs[i] - xs[j]) * (xs[i] - xs[j]);
            const double t = sum + term;
            comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term
                                                      : (term - t) + sum;
            sum = t;
        }
    }
    return std::sqrt((sum + comp) /
                     (static_cast<double>(n) * static_cast<double>(n - 1)));
}

void criterion_randomized_identities(Criterion& c) {
    SeededGenerator rng(987654321u);
    char what[120];
    const auto expect_rel = [&c](const char* label, double actual,
                                 double expected) {
        c.expect_near(label, actual, expected,
                      1e-12 * std::fmax(std::fabs(expected), 1e-300));
    };
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.next_u64() % 76);
        // Shifts stay proportional to the scale: the 1e-12 gate needs the
        // sample spread and the affine offset on a common magnitude scale,
        // otherwise the rounding of a + b*x alone already exceeds it.
        const double scale = std::pow(10.0, 4.0 * rng.uniform() - 2.0);
        const double shift = scale * 20.0 * (rng.uniform() - 0.5);
        const bool with_ties = rep % 4 == 0;
        std::vector<double> xs(n);
        for (double& x : xs) {
            double z = draw_std_normal(rng);
            if (with_ties) z = std::round(z * 4.0) / 4.0;
            if (rng.uniform() < 0.1) z *= 8.0;
            x = shift + scale * z;
        }

        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): gini sorted form vs pairwise loop",
                      rep, n);
        expect_rel(what, gini_n(xs), gini_n_naive(xs));
        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): sd centered vs pairwise identity",
                      rep, n);
        expect_rel(what, sd_n(xs), sd_pairwise(xs));

        const double a = scale * 10.0 * (rng.uniform() - 0.5);
        const double b = (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                         std::exp(4.0 * (rng.uniform() - 0.5));
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i) ys[i] = a + b * xs[i];
        const double ab = std::fabs(b);
        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): sd affine equivariance", rep, n);
        expect_rel(what, sd_n(ys), ab * sd_n(xs));
        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): gini affine equivariance", rep, n);
        expect_rel(what, gini_n(ys), ab * gini_n(xs));
        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): meandev affine equivariance", rep, n);
        expect_rel(what, mean_dev_n(ys, MeanDevScaling::Corrected),
                   ab * mean_dev_n(xs, MeanDevScaling::Corrected));
        std::snprintf(what, sizeof(what),
                      "sample %d (n=%zu): iqr affine equivariance", rep, n);
        expect_rel(what, iqr_n(ys), ab * iqr_n(xs));
    }
}

} // namespace

int main(int argc, char** argv) {
    std::size_t reps = 10000;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--paper-scale") == 0) {
            reps = 100000;
        } else if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) {
            reps = static_cast<std::size_t>(
                std::strtoull(argv[++i], nullptr, 10));
        } else if (std::strcmp(argv[i], "--help") == 0) {
            std::printf("usage: acceptance [--reps N] [--paper-scale]\n"
                        "  --reps N       Monte Carlo replications per cell "
                        "(default 10000)\n"
                        "  --paper-scale  shorthand for --reps 100000\n");
            return 0;
        } else {
            std::fprintf(stderr, "unknown argument: %s\n", argv[i]);
            return 64;
        }
    }
    if (reps < 2) {
        std::fprintf(stderr, "--reps must be at least 2\n");
        return 64;
    }

    std::printf("acceptance runner: ten criteria, %zu Monte Carlo "
                "replications per study cell\n",
                reps);
    std::fflush(stdout);

    int failed = 0;
    const auto run = [&failed](int number, const char* title,
                               const std::function<void(Criterion&)>& body) {
        Criterion c;
        c.number = number;
        c.title = title;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect_true(std::string("unhandled exception: ") + e.what(),
                          false);
        }
        std::printf("[%s] criterion %d: %s (%d comparisons)\n",
                    c.passed() ? "PASS" : "FAIL", c.number, c.title.c_str(),
                    c.comparisons);
        const std::size_t cap = 24;
        for (std::size_t i = 0; i < c.failure_lines.size() && i < cap; ++i) {
            std::printf("       %s\n", c.failure_lines[i].c_str());
        }
        if (c.failure_lines.size() > cap) {
            std::printf("       ... and %zu more failing comparisons\n",
                        c.failure_lines.size() - cap);
        }
        if (!c.passed()) ++failed;
        std::fflush(stdout);
    };

    run(1,
        "population scale values and asymptotic variances match the embedded "
        "six-decimal references (16 distributions, tol 5e-7, under 10 s)",
        criterion_population_table);
    run(2,
        "relative efficiencies vs sd match the embedded six-decimal "
        "references (16 distributions, tol 5e-7)",
        criterion_efficiency_table);
    run(3,
        "closed-form efficiency constants at the normal and Laplace "
        "(tol 1e-12)",
        criterion_closed_form_constants);
    run(4,
        "equal-efficiency contamination thresholds at lambda = 3 and the "
        "quoted nearby efficiency",
        criterion_thresholds);
    run(5,
        "normal-family ordered-gap integral pinned by quadrature (tol 1e-10)",
        criterion_normal_gap_integral);

    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport report = run_verification(VerifyScope::Full);
    const double verify_secs = seconds_since(t0);
    run(6,
        "closed forms vs the quadrature oracle: g and J across the parameter "
        "grid, mixture building blocks, power-kernel identities",
        [&](Criterion& c) { criterion_oracle_battery(c, report, verify_secs); });

    run(7,
        "exact finite-sample Gini variance matches the embedded rows at the "
        "normal and Laplace (tol 5e-4)",
        criterion_exact_finite_sample_variance);
    run(8,
        "seeded Monte Carlo study reproduces the embedded simulation "
        "references within four combined standard errors",
        [reps](Criterion& c) { criterion_monte_carlo(c, reps); });
    run(9,
        "influence functions: zero mean, second moment equals the asymptotic "
        "variance, finite-difference agreement",
        [&](Criterion& c) { criterion_influence_battery(c, report); });
    run(10,
        "estimator identities on 1000 randomized samples (relative tol "
        "1e-12)",
        criterion_randomized_identities);

    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed;
}
