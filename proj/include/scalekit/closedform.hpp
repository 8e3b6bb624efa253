#pragma once

// Closed-form population quantities for the five symmetric families: the
// standard deviation sigma(F), the mean absolute deviation d(F) about the
// median, Gini's mean difference g(F), the ordered-triple gap integral J,
// asymptotic variances and relative efficiencies of the four scale
// estimators, and the exact finite-sample variance of Gini's mean
// difference. Everything here is an explicit formula; the oracle module
// re-derives the same quantities from their defining integrals in tests.

#include "scalekit/distributions.hpp"
#include "scalekit/estimators.hpp"

#include <cstddef>

namespace scalekit {

struct PopulationSummary {
    double sigma = 0.0;
    double d = 0.0; // mean absolute deviation about the median
    double g = 0.0; // Gini's mean difference E|X - Y|
    double J = 0.0; // E[(X-Y)(Z-X); Y < X < Z], X,Y,Z i.i.d.
    double asv_sd = 0.0;
    double asv_d = 0.0;
    double asv_g = 0.0;
    double asv_iqr = 0.0;
    double are_g = 0.0;
    double are_d = 0.0;
    double are_iqr = 0.0;
};

double population_sigma(const DistributionSpec& dist);
double population_d(const DistributionSpec& dist);
double population_g(const DistributionSpec& dist);

// J enters the variance of Gini's mean difference both at finite n and in
// the limit. The Student-t value combines a Beta-function expression with
// the quadrature integral k_nu (which has no known closed form).
double integral_J(const DistributionSpec& dist);

// Closed-form building blocks of the normal-mixture J, exposed so tests can
// check each against direct quadrature of its defining integral:
//   mixture_integral_a(l) = int x  phi(x)^2 Phi(x/l) dx = 1/(4 pi sqrt(1+2l^2))
//   mixture_integral_b()  = int x^2 phi(x) Phi(x) dx = 1/2
//   mixture_integral_c(l) = int x^2 phi(x) Phi(x/l)^2 dx
//   mixture_integral_d(l) = int x^2 phi(x) Phi(x) Phi(x/l) dx
//   mixture_integral_e(l) = int phi(x)^2 phi(x/l) dx = l/(2 pi sqrt(1+2l^2))
double mixture_integral_a(double lambda);
double mixture_integral_b();
double mixture_integral_c(double lambda);
double mixture_integral_d(double lambda);
double mixture_integral_e(double lambda);

// The normal-mixture J assembled from an independently rearranged closed
// form (the arctan/zeta shape, zeta(l) = sqrt(2+l^2)). Agrees with
// integral_J to ~1e-12; kept as a tripwire for the coefficient-heavy
// primary assembly.
double mixture_j_rearranged(double lambda, double epsilon);

// Asymptotic variance of sqrt(n)(s_n - s(F)):
//   Sd:      (mu4 - 4 mu3 mu1 + 3 mu2^2)/(4 sigma^2) - sigma^2
//   MeanDev: sigma^2 - d^2
//   Gini:    4 (sigma^2 + 4J - g^2)
//   Iqr:     (1/4) / f(q_{3/4})^2   (symmetric F)
double asv(ScaleKind kind, const DistributionSpec& dist);

// Relative efficiency of s_n against sigma_n after standardizing both to
// estimate sigma: ASV(sigma_n)/ASV(s_n) * s(F)^2/sigma(F)^2. are(Sd, .) = 1.
double are(ScaleKind kind, const DistributionSpec& dist);

// Exact variance of Gini's mean difference at sample size n >= 2:
//   var(g_n) = {4(n-1) sigma^2 + 16(n-2) J - 2(2n-3) g^2} / (n(n-1)).
// n * var(g_n) increases to asv(Gini) as n grows.
double lomnicki_var(const DistributionSpec& dist, std::size_t n);

PopulationSummary summarize(const DistributionSpec& dist);

} // namespace scalekit
