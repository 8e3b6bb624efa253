#pragma once

// Independent recomputation of every population quantity from its defining
// integral by adaptive Gauss-Kronrod quadrature: Gini's mean difference, the
// triple integral J (factorized into nested 1-D passes), the Student-t
// integral K_nu = int x^2 f_nu F_nu^2 dx (no closed form), and
// finite-difference influence values from exactly contaminated functionals.
// This module is the anti-regression backstop for the closed forms; it shares
// only the distribution primitives with them, never their formulas.

#include "scalekit/distributions.hpp"
#include "scalekit/estimators.hpp"

#include <functional>

namespace scalekit {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive 15-point Gauss-Kronrod integration. The infinite-domain versions
// substitute x = t/(1-t^2) (whole line) or x = a + u/(1-u) (half line) onto a
// finite interval. Throws accuracy_error (carrying the best estimate) if the
// error estimate cannot be brought below tol.
QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double tol);
QuadratureResult integrate_above(const std::function<double(double)>& f,
                                 double a, double tol);
QuadratureResult integrate_below(const std::function<double(double)>& f,
                                 double b, double tol);
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double tol);

// Integral of f over the distribution's support (clips to [a,b] for bounded
// families so discontinuous densities stay off the integrator's path).
QuadratureResult integrate_support(const DistributionSpec& d,
                                   const std::function<double(double)>& f,
                                   double tol);

// E|X - Y| from the defining double integral, reduced for a symmetric
// density: centered at the symmetry point, g = 8 int_0^inf [int_x^inf y f(y)
// dy] f(x) dx, both passes by quadrature. Absolute accuracy ~1e-9.
double g_by_quadrature(const DistributionSpec& d);

// J = E[(X-Y)(Z-X); Y<X<Z] with X,Y,Z i.i.d. Given the middle variable the
// integrand factorizes, so J = int f(x) P(x) Q(x) dx with
// P(x) = int_{y<x} (x-y) f(y) dy and Q(x) = int_{z>x} (z-x) f(z) dz, each by
// its own quadrature pass. Absolute accuracy ~1e-8.
double j_by_quadrature(const DistributionSpec& d);

// K_nu = int x^2 f_nu(x) F_nu(x)^2 dx, by quadrature (no closed form is
// known), absolute error <= 1e-10. Memoized per nu.
double k_nu(int nu);

// Finite-difference influence value: (s(F_eps_x) - s(F))/eps where F_eps_x
// mixes a point mass at x into F with weight eps. The contaminated functional
// is evaluated exactly: sd from contaminated moments, the mean deviation from
// the contaminated median (root of the contaminated cdf equation) plus a
// truncated-moment split, Gini from g(F_eps) = (1-eps)^2 g(F)
// + 2 eps (1-eps) E_F|X - x|. kind must be Sd, MeanDev or Gini.
double if_finite_difference(ScaleKind kind, const DistributionSpec& d, double x,
                            double eps);

} // namespace scalekit
