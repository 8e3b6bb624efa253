#include "scalekit/verification.hpp"

#include "scalekit/closedform.hpp"
#include "scalekit/distributions.hpp"
#include "scalekit/errors.hpp"
#include "scalekit/influence.hpp"
#include "scalekit/oracle.hpp"
#include "scalekit/special.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace scalekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void add_check(VerifyReport& report, std::string name, double expected,
               double actual, double tolerance) {
    const bool passed =
        std::isfinite(actual) && std::fabs(actual - expected) <= tolerance;
    report.checks.push_back(
        {std::move(name), expected, actual, tolerance, passed});
    if (!passed) ++report.failures;
}

// A stalled adaptive pass still carries its best estimate; the comparison
// against the closed form is the actual contract, so use it.
double best_effort(const std::function<double()>& f) {
    try {
        return f();
    } catch (const accuracy_error& e) {
        return e.best_estimate;
    }
}

std::vector<DistributionSpec> battery_specs(VerifyScope scope) {
    std::vector<DistributionSpec> specs;
    auto add_mixture = [&specs](double lambda, double epsilon) {
        specs.push_back(DistributionSpec{NormalMixture{lambda, epsilon}});
    };
    if (scope == VerifyScope::Quick) {
        for (const double lambda : {1.0, 3.0}) {
            for (const double eps : {0.0, 0.01, 0.5}) {
                add_mixture(lambda, eps);
            }
        }
        specs.push_back(DistributionSpec{StudentT{5}});
        specs.push_back(DistributionSpec{StudentT{16}});
        specs.push_back(DistributionSpec{Normal{0.0, 1.0}});
        specs.push_back(DistributionSpec{Laplace{0.0, 1.0}});
        specs.push_back(DistributionSpec{Uniform{0.0, 1.0}});
        return specs;
    }

    for (const double lambda : {1.0, 1.5, 3.0, 5.0}) {
        for (const double eps : {0.0, 1e-4, 1e-2, 0.1, 0.5, 1.0}) {
            add_mixture(lambda, eps);
        }
    }
    for (const double eps : {0.001, 0.008, 0.05, 0.3}) add_mixture(2.0, eps);
    for (const double eps : {0.001, 0.05, 0.3}) add_mixture(4.0, eps);
    for (const double eps : {0.01, 0.2}) add_mixture(6.0, eps);
    for (const double eps : {0.008, 0.00175, 0.000309}) add_mixture(3.0, eps);
    for (const double eps : {0.05, 0.5}) add_mixture(1.2, eps);

    for (const int nu : {5, 6, 7, 8, 10, 12, 16, 25, 41, 60, 100, 200}) {
        specs.push_back(DistributionSpec{StudentT{nu}});
    }
    specs.push_back(DistributionSpec{Normal{0.0, 1.0}});
    specs.push_back(DistributionSpec{Normal{1.5, 2.0}});
    specs.push_back(DistributionSpec{Normal{-3.0, 0.5}});
    specs.push_back(DistributionSpec{Normal{10.0, 0.1}});
    specs.push_back(DistributionSpec{Laplace{0.0, 1.0}});
    specs.push_back(DistributionSpec{Laplace{-0.5, 3.0}});
    specs.push_back(DistributionSpec{Laplace{2.0, 0.25}});
    specs.push_back(DistributionSpec{Laplace{0.0, 0.5}});
    specs.push_back(DistributionSpec{Uniform{0.0, 1.0}});
    specs.push_back(DistributionSpec{Uniform{-2.0, 5.0}});
    specs.push_back(DistributionSpec{Uniform{-1.0, 1.0}});
    specs.push_back(DistributionSpec{Uniform{0.0, 10.0}});
    return specs;
}

void check_g_and_j(VerifyReport& report, const std::vector<DistributionSpec>& specs) {
    for (const DistributionSpec& dist : specs) {
        add_check(report, "g(" + dist.spec_string() + ")", population_g(dist),
                  best_effort([&] { return g_by_quadrature(dist); }), 1e-8);
        add_check(report, "J(" + dist.spec_string() + ")", integral_J(dist),
                  best_effort([&] { return j_by_quadrature(dist); }), 1e-8);
        ++report.gj_combinations;
    }
}

void check_mixture_blocks(VerifyReport& report, VerifyScope scope) {
    const std::vector<double> lambdas =
        scope == VerifyScope::Full ? std::vector<double>{0.5, 1.0, 2.0, 3.0}
                                   : std::vector<double>{1.0, 2.0};
    char name[64];
    for (const double l : lambdas) {
        const auto tag = [&name, l](const char* letter) {
            std::snprintf(name, sizeof(name), "%s(%g)", letter, l);
            return std::string(name);
        };
        add_check(report, tag("A"), mixture_integral_a(l),
                  best_effort([l] {
                      return integrate_real_line(
                                 [l](double x) {
                                     const double p = std_normal_pdf(x);
                                     return x * p * p * std_normal_cdf(x / l);
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-9);
        add_check(report, tag("C"), mixture_integral_c(l),
                  best_effort([l] {
                      return integrate_real_line(
                                 [l](double x) {
                                     const double F = std_normal_cdf(x / l);
                                     return x * x * std_normal_pdf(x) * F * F;
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-9);
        add_check(report, tag("D"), mixture_integral_d(l),
                  best_effort([l] {
                      return integrate_real_line(
                                 [l](double x) {
                                     return x * x * std_normal_pdf(x) *
                                            std_normal_cdf(x) *
                                            std_normal_cdf(x / l);
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-9);
        add_check(report, tag("E"), mixture_integral_e(l),
                  best_effort([l] {
                      return integrate_real_line(
                                 [l](double x) {
                                     const double p = std_normal_pdf(x);
                                     return p * p * std_normal_pdf(x / l);
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-9);
    }
    add_check(report, "B", mixture_integral_b(), best_effort([] {
                  return integrate_real_line(
                             [](double x) {
                                 return x * x * std_normal_pdf(x) *
                                        std_normal_cdf(x);
                             },
                             1e-10)
                      .value;
              }),
              1e-9);
}

void check_identities(VerifyReport& report) {
    // int x^2 phi(x) Phi(x)^2 dx = 1/3 + 1/(2 pi sqrt(3)); this single value
    // pins the normal-family J.
    add_check(report, "I1", 1.0 / 3.0 + 1.0 / (2.0 * kPi * std::sqrt(3.0)),
              best_effort([] {
                  return integrate_real_line(
                             [](double x) {
                                 const double F = std_normal_cdf(x);
                                 return x * x * std_normal_pdf(x) * F * F;
                             },
                             1e-10)
                      .value;
              }),
              1e-10);

    // Normalization identities of t-like power kernels:
    //   int (1+x^2/m)^-m dx          = sqrt(m) B(m - 1/2, 1/2)
    //   int (1+x^2/m)^-(3m-1)/2 dx   = sqrt(m) B((3m-2)/2, 1/2)
    char name[64];
    for (const int m : {5, 9, 16}) {
        const double md = m;
        std::snprintf(name, sizeof(name), "power-norm(-m, m=%d)", m);
        add_check(report, name,
                  std::sqrt(md) * std::exp(log_beta(md - 0.5, 0.5)),
                  best_effort([md] {
                      return integrate_real_line(
                                 [md](double x) {
                                     return std::exp(-md *
                                                     std::log1p(x * x / md));
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-10);
        std::snprintf(name, sizeof(name), "power-norm(-(3m-1)/2, m=%d)", m);
        add_check(report, name,
                  std::sqrt(md) * std::exp(log_beta(1.5 * md - 1.0, 0.5)),
                  best_effort([md] {
                      return integrate_real_line(
                                 [md](double x) {
                                     return std::exp(-(1.5 * md - 0.5) *
                                                     std::log1p(x * x / md));
                                 },
                                 1e-10)
                          .value;
                  }),
                  1e-10);
    }

    // Antiderivative identity: int_0^T x (1+x^2/b)^a dx
    //   = b/(2(a+1)) {(1+T^2/b)^(a+1) - 1}.
    struct Case {
        double beta;
        double alpha;
        double top;
    };
    for (const Case c : {Case{5.0, -3.0, 2.0}, Case{9.0, -5.0, 1.5},
                         Case{16.0, -8.5, 3.0}}) {
        std::snprintf(name, sizeof(name), "power-antideriv(b=%g,a=%g)", c.beta,
                      c.alpha);
        const double closed =
            c.beta / (2.0 * (c.alpha + 1.0)) *
            (std::pow(1.0 + c.top * c.top / c.beta, c.alpha + 1.0) - 1.0);
        add_check(report, name, closed, best_effort([c] {
                      return integrate_interval(
                                 [c](double x) {
                                     return x * std::pow(1.0 + x * x / c.beta,
                                                         c.alpha);
                                 },
                                 0.0, c.top, 1e-11)
                          .value;
                  }),
                  1e-10);
    }
}

void check_influence(VerifyReport& report, VerifyScope scope) {
    std::vector<DistributionSpec> dists = {
        DistributionSpec{Normal{0.0, 1.0}},
        DistributionSpec{Laplace{0.0, 1.0}},
        DistributionSpec{Uniform{0.0, 1.0}},
        DistributionSpec{NormalMixture{3.0, 0.05}},
    };
    if (scope == VerifyScope::Full) {
        dists.push_back(DistributionSpec{StudentT{5}});
        dists.push_back(DistributionSpec{StudentT{41}});
        dists.push_back(DistributionSpec{NormalMixture{3.0, 0.008}});
    }
    const ScaleKind kinds[] = {ScaleKind::Sd, ScaleKind::MeanDev,
                               ScaleKind::Gini};
    const char* kind_names[] = {"sd", "meandev", "gini"};
    for (const DistributionSpec& dist : dists) {
        for (int k = 0; k < 3; ++k) {
            const ScaleKind kind = kinds[k];
            // Fisher consistency: the influence function integrates to zero
            // against its own density.
            add_check(report,
                      std::string("IF-mean-zero ") + kind_names[k] + "(" +
                          dist.spec_string() + ")",
                      0.0, best_effort([&] {
                          return integrate_support(
                                     dist,
                                     [&](double x) {
                                         return influence_value(kind, dist, x) *
                                                pdf(dist, x);
                                     },
                                     1e-9)
                              .value;
                      }),
                      1e-8);
            // Second moment of the influence function equals the asymptotic
            // variance. For Gini this double-checks the assembled J, which
            // at the t family is itself partly quadrature; skip it there.
            if (kind == ScaleKind::Gini &&
                dist.family() == Family::StudentT) {
                continue;
            }
            add_check(report,
                      std::string("IF-second-moment ") + kind_names[k] + "(" +
                          dist.spec_string() + ")",
                      asv(kind, dist), best_effort([&] {
                          return integrate_support(
                                     dist,
                                     [&](double x) {
                                         const double v =
                                             influence_value(kind, dist, x);
                                         return v * v * pdf(dist, x);
                                     },
                                     1e-9)
                              .value;
                      }),
                      1e-6);
        }
    }

    if (scope == VerifyScope::Full) {
        // Finite-difference construction of the influence value against the
        // closed forms, at a small but positive contamination weight.
        const double eps = 1e-6;
        const DistributionSpec fd_dists[] = {
            DistributionSpec{Normal{0.0, 1.0}},
            DistributionSpec{Laplace{0.0, 1.0}},
            DistributionSpec{NormalMixture{3.0, 0.05}},
        };
        char name[96];
        for (const DistributionSpec& dist : fd_dists) {
            for (int k = 0; k < 3; ++k) {
                for (const double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
                    std::snprintf(name, sizeof(name), "IF-fd %s(%s) x=%g",
                                  kind_names[k], dist.spec_string().c_str(), x);
                    add_check(report, name,
                              influence_value(kinds[k], dist, x),
                              best_effort([&] {
                                  return if_finite_difference(kinds[k], dist,
                                                              x, eps);
                              }),
                              1e-4);
                }
            }
        }
    }
}

} // namespace

VerifyReport run_verification(VerifyScope scope) {
    VerifyReport report;
    check_g_and_j(report, battery_specs(scope));
    check_mixture_blocks(report, scope);
    check_identities(report);
    check_influence(report, scope);
    return report;
}

} // namespace scalekit
