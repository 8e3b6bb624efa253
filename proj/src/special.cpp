#include "scalekit/special.hpp"
#include "scalekit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace scalekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178; // ln sqrt(2*pi)
constexpr double kInvSqrt2Pi = 0.39894228040143267794; // 1/sqrt(2*pi)
constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kInvSqrt2 = 0.70710678118654752440;   // 1/sqrt(2)

std::string format_arg(const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.9g", name, v);
    return buf;
}

// Lanczos approximation, g = 607/128, 15 coefficients. Relative error of the
// rational part is below 1e-15 for x > 0.
double log_gamma_lanczos(double x) {
    static constexpr double g = 4.7421875;
    static constexpr double coeff[15] = {
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    };
    const double t = x + g - 0.5;
    double series = coeff[0];
    for (int k = 1; k < 15; ++k) {
        series += coeff[k] / (x + k - 1);
    }
    return kLnSqrt2Pi + (x - 0.5) * std::log(t) - t + std::log(series);
}

// erf by its Taylor series, accurate for |x| <= ~2 (used up to 1.5).
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 64; ++k) {
        term *= -x2 / k;
        const double contrib = term / (2 * k + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return 2.0 * kInvSqrtPi * sum;
}

// erfc for x >= 1.5 by the Legendre continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    if (f == 0.0) f = tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double a = 0.5 * k; // partial numerators 1/2, 1, 3/2, ...
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) {
            return std::exp(-x * x) * kInvSqrtPi / f;
        }
    }
    throw accuracy_error("erfc continued fraction did not converge at " +
                             format_arg("x", x),
                         std::exp(-x * x) * kInvSqrtPi / f,
                         std::numeric_limits<double>::quiet_NaN());
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw domain_error("log_gamma requires x > 0, got " + format_arg("x", x));
    }
    if (x < 0.5) {
        // Reflection keeps the Lanczos argument away from the pole at 0.
        return std::log(kPi / std::sin(kPi * x)) - log_gamma_lanczos(1.0 - x);
    }
    return log_gamma_lanczos(x);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw domain_error("log_beta requires positive arguments, got " +
                           format_arg("a", a) + ", " + format_arg("b", b));
    }
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    if (ax <= 1.5) {
        return erf_series(x);
    }
    const double tail = (ax >= 27.0) ? 0.0 : erfc_cf(ax);
    return x > 0.0 ? 1.0 - tail : tail - 1.0;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x > 1.5) {
        return x >= 27.0 ? 0.0 : erfc_cf(x); // exp(-27^2) underflows anyway
    }
    if (x < -1.5) {
        return 2.0 - (x <= -27.0 ? 0.0 : erfc_cf(-x));
    }
    return 1.0 - erf_series(x);
}

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    return 0.5 * erfc(-x * kInvSqrt2);
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw domain_error("regularized_incomplete_beta requires a,b > 0, got " +
                           format_arg("a", a) + ", " + format_arg("b", b));
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw domain_error("regularized_incomplete_beta requires x in [0,1], got " +
                           format_arg("x", x));
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // Continued fraction for I_x(a,b) (modified Lentz). Converges quickly for
    // x < (a+1)/(a+b+2); otherwise use I_x(a,b) = 1 - I_{1-x}(b,a).
    const bool swap = x >= (a + 1.0) / (a + b + 2.0);
    const double aa = swap ? b : a;
    const double bb = swap ? a : b;
    const double xx = swap ? 1.0 - x : x;

    const double front =
        std::exp(aa * std::log(xx) + bb * std::log1p(-xx) - log_beta(aa, bb)) / aa;

    constexpr double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (aa + bb) * xx / (aa + 1.0);
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double f = d;
    bool converged = false;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        // even step
        double coef = m * (bb - m) * xx / ((aa + m2 - 1.0) * (aa + m2));
        d = 1.0 + coef * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + coef / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        f *= c * d;
        // odd step
        coef = -(aa + m) * (aa + bb + m) * xx / ((aa + m2) * (aa + m2 + 1.0));
        d = 1.0 + coef * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + coef / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw accuracy_error("incomplete beta continued fraction did not converge at " +
                                 format_arg("a", a) + ", " + format_arg("b", b) + ", " +
                                 format_arg("x", x),
                             swap ? 1.0 - front * f : front * f,
                             std::numeric_limits<double>::quiet_NaN());
    }
    const double value = front * f;
    return swap ? 1.0 - value : value;
}

double student_t_cdf(double nu, double x) {
    if (!(nu > 0.0)) {
        throw domain_error("student_t_cdf requires nu > 0, got " + format_arg("nu", nu));
    }
    if (x == 0.0) return 0.5;
    const double tail = regularized_incomplete_beta(0.5 * nu, 0.5, nu / (nu + x * x));
    return x < 0.0 ? 0.5 * tail : 1.0 - 0.5 * tail;
}

} // namespace scalekit
