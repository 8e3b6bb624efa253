#pragma once

// Special-function kernel: log-gamma, log-beta, erf/erfc, the standard normal
// density/cdf, the regularized incomplete beta function and the Student-t cdf.
// Everything downstream (distribution cdfs, closed-form efficiencies,
// quadrature oracles) bottoms out here, so accuracy targets are strict:
// log_gamma/log_beta to ~1e-13 relative, the normal cdf to 1e-14 absolute.

namespace scalekit {

// ln Gamma(x) for x > 0. Lanczos approximation with reflection for x < 0.5.
// Relative error <= 1e-13 on (0, 1e7). Throws domain_error for x <= 0.
double log_gamma(double x);

// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a,b > 0.
double log_beta(double a, double b);

// Error function and complement. Taylor series for |x| <= 1.5, Lentz
// continued fraction for the complement beyond. Absolute error <= 1e-15.
double erf(double x);
double erfc(double x);

// Standard normal density and cdf. std_normal_cdf(x) has absolute error
// <= 1e-14 and saturates to exactly 0/1 in the far tails (|x| ~ 40).
double std_normal_pdf(double x);
double std_normal_cdf(double x);

// Regularized incomplete beta function I_x(a,b), a,b > 0, x in [0,1],
// by the standard continued fraction with the symmetry switch at
// x = (a+1)/(a+b+2). Throws accuracy_error if the fraction fails to converge.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t cdf for nu degrees of freedom via the incomplete beta function.
double student_t_cdf(double nu, double x);

} // namespace scalekit
