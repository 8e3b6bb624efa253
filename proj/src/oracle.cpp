#include "scalekit/oracle.hpp"

#include "scalekit/errors.hpp"
#include "scalekit/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace scalekit {

namespace {

// 15-point Kronrod nodes/weights and the embedded 7-point Gauss weights,
// full double-precision literals.
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

struct PanelResult {
    double value;
    double error;
};

// One Gauss-Kronrod panel on [a, b]. The error estimate follows the usual
// practice: compare the 7-point Gauss and 15-point Kronrod rules, rescale by
// the integral of |f - mean| so the estimate stays meaningful for peaked
// integrands, and floor it at the roundoff level of the absolute integral.
PanelResult gk15_panel(const std::function<double(double)>& f, double a,
                       double b, std::size_t& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double f_lo[7];
    double f_hi[7];
    const double f_center = f(center);
    double res_gauss = f_center * kWg[3];
    double res_kronrod = f_center * kWgk[7];
    double res_abs = std::fabs(res_kronrod);
    for (int j = 0; j < 3; ++j) {
        const int i = 2 * j + 1;
        const double offset = half * kXgk[i];
        const double v_lo = f(center - offset);
        const double v_hi = f(center + offset);
        f_lo[i] = v_lo;
        f_hi[i] = v_hi;
        res_gauss += kWg[j] * (v_lo + v_hi);
        res_kronrod += kWgk[i] * (v_lo + v_hi);
        res_abs += kWgk[i] * (std::fabs(v_lo) + std::fabs(v_hi));
    }
    for (int j = 0; j < 4; ++j) {
        const int i = 2 * j;
        const double offset = half * kXgk[i];
        const double v_lo = f(center - offset);
        const double v_hi = f(center + offset);
        f_lo[i] = v_lo;
        f_hi[i] = v_hi;
        res_kronrod += kWgk[i] * (v_lo + v_hi);
        res_abs += kWgk[i] * (std::fabs(v_lo) + std::fabs(v_hi));
    }
    evaluations += 15;

    const double mean = 0.5 * res_kronrod;
    double res_asc = kWgk[7] * std::fabs(f_center - mean);
    for (int i = 0; i < 7; ++i) {
        res_asc += kWgk[i] *
                   (std::fabs(f_lo[i] - mean) + std::fabs(f_hi[i] - mean));
    }
    const double abs_half = std::fabs(half);
    res_abs *= abs_half;
    res_asc *= abs_half;

    double err = std::fabs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    const double epsmach = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (res_abs > tiny / (50.0 * epsmach)) {
        err = std::max(err, 50.0 * epsmach * res_abs);
    }
    return {res_kronrod * half, err};
}

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

constexpr std::size_t kMaxSegments = 2000;

// Globally adaptive driver: repeatedly bisect the segment with the largest
// error estimate until the summed estimate drops below tol (absolute).
QuadratureResult adaptive_gk(const std::function<double(double)>& f, double a,
                             double b, double tol) {
    std::size_t evaluations = 0;
    std::vector<Segment> segments;
    segments.reserve(64);
    const PanelResult first = gk15_panel(f, a, b, evaluations);
    segments.push_back({a, b, first.value, first.error});

    double err_total = first.error;
    while (std::isfinite(err_total) && err_total > tol &&
           segments.size() < kMaxSegments) {
        std::pop_heap(segments.begin(), segments.end());
        const Segment worst = segments.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            std::push_heap(segments.begin(), segments.end());
            break; // segment already at machine resolution
        }
        segments.pop_back();
        const PanelResult lo = gk15_panel(f, worst.a, mid, evaluations);
        const PanelResult hi = gk15_panel(f, mid, worst.b, evaluations);
        segments.push_back({worst.a, mid, lo.value, lo.error});
        std::push_heap(segments.begin(), segments.end());
        segments.push_back({mid, worst.b, hi.value, hi.error});
        std::push_heap(segments.begin(), segments.end());
        // Re-sum instead of updating incrementally so float drift cannot
        // stall or prematurely satisfy the loop condition.
        err_total = 0.0;
        for (const Segment& s : segments) err_total += s.error;
    }

    double value = 0.0;
    double comp = 0.0;
    err_total = 0.0;
    for (const Segment& s : segments) {
        const double t = value + s.value;
        if (std::fabs(value) >= std::fabs(s.value)) {
            comp += (value - t) + s.value;
        } else {
            comp += (s.value - t) + value;
        }
        value = t;
        err_total += s.error;
    }
    value += comp;

    if (!std::isfinite(value) || !std::isfinite(err_total)) {
        throw accuracy_error("quadrature produced non-finite values", value,
                             err_total);
    }
    if (err_total > tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "quadrature stalled at error %.3g (requested %.3g) after "
                      "%zu segments",
                      err_total, tol, segments.size());
        throw accuracy_error(msg, value, err_total);
    }
    return {value, err_total, evaluations};
}

// Tolerances for the nested integrals below. Inner passes run tighter than
// outer ones so the propagated inner error stays below the outer budget.
constexpr double kGiniInnerTol = 1e-12;
constexpr double kGiniOuterTol = 1e-10;
constexpr double kJInnerTol = 1e-11;
constexpr double kJOuterTol = 1e-9;
constexpr double kFdTol = 1e-12;
constexpr double kKnuTol = 1e-11;

// E_F |X - c| split at the kink c so every panel sees a smooth integrand.
double mean_abs_about(const DistributionSpec& d, double c, double tol) {
    const auto [lo, hi] = support(d);
    double below = 0.0;
    const double below_top = std::isfinite(hi) ? std::min(c, hi) : c;
    auto weight_below = [&d, c](double t) { return (c - t) * pdf(d, t); };
    if (std::isfinite(lo)) {
        if (lo < below_top) {
            below = integrate_interval(weight_below, lo, below_top, tol).value;
        }
    } else {
        below = integrate_below(weight_below, below_top, tol).value;
    }

    double above = 0.0;
    const double above_bottom = std::isfinite(lo) ? std::max(c, lo) : c;
    auto weight_above = [&d, c](double t) { return (t - c) * pdf(d, t); };
    if (std::isfinite(hi)) {
        if (above_bottom < hi) {
            above = integrate_interval(weight_above, above_bottom, hi, tol).value;
        }
    } else {
        above = integrate_above(weight_above, above_bottom, tol).value;
    }
    return below + above;
}

} // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double tol) {
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw domain_error("integration interval must be finite with a <= b");
    }
    if (a == b) return {0.0, 0.0, 0};
    return adaptive_gk(f, a, b, tol);
}

QuadratureResult integrate_above(const std::function<double(double)>& f,
                                 double a, double tol) {
    if (!std::isfinite(a)) {
        throw domain_error("lower integration limit must be finite");
    }
    // y = a + u/(1-u) maps (0,1) onto (a, inf); dy = du/(1-u)^2. The zero
    // check skips the weight once the integrand has decayed to nothing,
    // avoiding 0 * inf at the far end.
    auto g = [&f, a](double u) {
        const double om = 1.0 - u;
        const double y = a + u / om;
        const double v = f(y);
        if (v == 0.0) return 0.0;
        return v / (om * om);
    };
    return adaptive_gk(g, 0.0, 1.0, tol);
}

QuadratureResult integrate_below(const std::function<double(double)>& f,
                                 double b, double tol) {
    if (!std::isfinite(b)) {
        throw domain_error("upper integration limit must be finite");
    }
    auto g = [&f, b](double u) {
        const double om = 1.0 - u;
        const double y = b - u / om;
        const double v = f(y);
        if (v == 0.0) return 0.0;
        return v / (om * om);
    };
    return adaptive_gk(g, 0.0, 1.0, tol);
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double tol) {
    // x = t/(1-t^2) maps (-1,1) onto the real line; dx = (1+t^2)/(1-t^2)^2 dt.
    auto g = [&f](double t) {
        const double om = 1.0 - t * t;
        const double x = t / om;
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return v * (1.0 + t * t) / (om * om);
    };
    return adaptive_gk(g, -1.0, 1.0, tol);
}

QuadratureResult integrate_support(const DistributionSpec& d,
                                   const std::function<double(double)>& f,
                                   double tol) {
    const auto [lo, hi] = support(d);
    const bool lo_finite = std::isfinite(lo);
    const bool hi_finite = std::isfinite(hi);
    if (lo_finite && hi_finite) return integrate_interval(f, lo, hi, tol);
    if (lo_finite) return integrate_above(f, lo, tol);
    if (hi_finite) return integrate_below(f, hi, tol);
    return integrate_real_line(f, tol);
}

double g_by_quadrature(const DistributionSpec& d) {
    static std::map<std::string, double> cache;
    static std::mutex cache_mutex;
    const std::string key = d.spec_string();
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    // Center at the symmetry point so the density ft is even, then
    //   E|X - Y| = 8 int_0^top [ int_x^top y ft(y) dy ] ft(x) dx
    // with top the (centered) upper support end. Sanity anchor: for the
    // standard normal the inner integral is phi(x), giving 2/sqrt(pi).
    const double c = symmetry_center(d);
    const auto [lo, hi] = support(d);
    (void)lo;
    const bool bounded = std::isfinite(hi);
    const double top = bounded ? hi - c : 0.0;
    auto centered_pdf = [&d, c](double u) { return pdf(d, c + u); };
    auto tail_first_moment = [&](double x) {
        auto y_weighted = [&centered_pdf](double y) {
            return y * centered_pdf(y);
        };
        if (!bounded) {
            return integrate_above(y_weighted, x, kGiniInnerTol).value;
        }
        if (x >= top) return 0.0;
        return integrate_interval(y_weighted, x, top, kGiniInnerTol).value;
    };
    auto outer = [&](double x) {
        const double fx = centered_pdf(x);
        if (fx == 0.0) return 0.0;
        return tail_first_moment(x) * fx;
    };
    const double raw =
        bounded ? integrate_interval(outer, 0.0, top, kGiniOuterTol).value
                : integrate_above(outer, 0.0, kGiniOuterTol).value;
    const double value = 8.0 * raw;

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, value);
    return value;
}

double j_by_quadrature(const DistributionSpec& d) {
    // J = E[(X-Y)(Z-X); Y < X < Z] for i.i.d. X,Y,Z. Conditioned on the
    // middle value x the two factors are independent, so
    //   J = int f(x) P(x) Q(x) dx,
    //   P(x) = int_{y<x} (x-y) f(y) dy,  Q(x) = int_{z>x} (z-x) f(z) dz.
    // Only the short tail is integrated numerically: summing both sides over
    // the whole line gives P(x) - Q(x) = int (x-y) f(y) dy = x - mean, so the
    // long side follows exactly from the short one. The long side grows like
    // |x|, whose roundoff floor (~50 eps |x|) would exceed the fixed absolute
    // tolerance once the outer pass probes far into a slowly decaying tail.
    const auto [lo, hi] = support(d);
    const double mean = symmetry_center(d);
    auto below_gap_mean = [&](double x) {
        auto gap = [&d, x](double y) { return (x - y) * pdf(d, y); };
        if (std::isfinite(lo)) {
            if (lo >= x) return 0.0;
            return integrate_interval(gap, lo, x, kJInnerTol).value;
        }
        return integrate_below(gap, x, kJInnerTol).value;
    };
    auto above_gap_mean = [&](double x) {
        auto gap = [&d, x](double z) { return (z - x) * pdf(d, z); };
        if (std::isfinite(hi)) {
            if (x >= hi) return 0.0;
            return integrate_interval(gap, x, hi, kJInnerTol).value;
        }
        return integrate_above(gap, x, kJInnerTol).value;
    };
    auto outer = [&](double x) {
        const double fx = pdf(d, x);
        if (fx == 0.0) return 0.0;
        double p;
        double q;
        if (x >= mean) {
            q = above_gap_mean(x);
            p = q + (x - mean);
        } else {
            p = below_gap_mean(x);
            q = p - (x - mean);
        }
        return fx * p * q;
    };
    // Integrate in centered units of the interquartile width. The change of
    // variables is exact and keeps the integrand's bump near the origin with
    // O(1) width, where the initial quadrature nodes of the infinite-range
    // transforms actually fall; without it a shifted or narrow distribution
    // can slip between the first panel's nodes and converge to zero.
    const double width = quantile(d, 0.75) - quantile(d, 0.25);
    auto outer_std = [&](double u) { return width * outer(mean + width * u); };
    const double a = std::isfinite(lo)
                         ? (lo - mean) / width
                         : -std::numeric_limits<double>::infinity();
    const double b = std::isfinite(hi)
                         ? (hi - mean) / width
                         : std::numeric_limits<double>::infinity();
    if (std::isfinite(a) && std::isfinite(b)) {
        return integrate_interval(outer_std, a, b, kJOuterTol).value;
    }
    if (std::isfinite(a)) return integrate_above(outer_std, a, kJOuterTol).value;
    if (std::isfinite(b)) return integrate_below(outer_std, b, kJOuterTol).value;
    return integrate_real_line(outer_std, kJOuterTol).value;
}

double k_nu(int nu) {
    if (nu < 3) {
        throw domain_error(
            "k_nu requires nu >= 3 so the second moment integral converges");
    }
    static std::map<int, double> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(nu);
        if (it != cache.end()) return it->second;
    }

    // Build the t density from scratch here (log form) rather than through a
    // DistributionSpec, so this stays an independent cross-check of it.
    const double v = static_cast<double>(nu);
    const double log_norm = -0.5 * std::log(v) - log_beta(0.5 * v, 0.5);
    auto integrand = [v, log_norm](double x) {
        const double log_pdf =
            log_norm - 0.5 * (v + 1.0) * std::log1p(x * x / v);
        const double density = std::exp(log_pdf);
        if (density == 0.0) return 0.0;
        const double F = student_t_cdf(v, x);
        return x * x * density * F * F;
    };
    const double value = integrate_real_line(integrand, kKnuTol).value;

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(nu, value);
    return value;
}

double if_finite_difference(ScaleKind kind, const DistributionSpec& d, double x,
                            double eps) {
    if (!(eps > 0.0) || !(eps < 0.5)) {
        throw domain_error("contamination weight must lie in (0, 0.5)");
    }
    switch (kind) {
    case ScaleKind::Sd: {
        // sd(F_eps) follows from the contaminated first two moments.
        const MomentSet m = moments(d);
        const double mu1 = (1.0 - eps) * m.mu1 + eps * x;
        const double mu2 = (1.0 - eps) * m.mu2 + eps * x * x;
        const double var_eps = mu2 - mu1 * mu1;
        return (std::sqrt(var_eps) - std::sqrt(m.sigma2)) / eps;
    }
    case ScaleKind::MeanDev: {
        // Median of F_eps = (1-eps) F + eps delta_x: the atom either sits
        // above the shifted quantile (median = F^{-1}(1/2 / (1-eps))), below
        // it (median = F^{-1}((1/2 - eps)/(1-eps))), or carries the median
        // itself.
        const double med_above = quantile(d, 0.5 / (1.0 - eps));
        const double med_below = quantile(d, (0.5 - eps) / (1.0 - eps));
        double med_eps;
        if (x > med_above) {
            med_eps = med_above;
        } else if (x <= med_below) {
            med_eps = med_below;
        } else {
            med_eps = x;
        }
        const double d_eps = (1.0 - eps) * mean_abs_about(d, med_eps, kFdTol) +
                             eps * std::fabs(x - med_eps);
        const double d_base = mean_abs_about(d, quantile(d, 0.5), kFdTol);
        return (d_eps - d_base) / eps;
    }
    case ScaleKind::Gini: {
        // E|X'-Y'| under F_eps: both draws from F with prob (1-eps)^2, one
        // atom with prob 2 eps (1-eps), both atoms contribute zero.
        const double g_base = g_by_quadrature(d);
        const double g_eps = (1.0 - eps) * (1.0 - eps) * g_base +
                             2.0 * eps * (1.0 - eps) * mean_abs_about(d, x, kFdTol);
        return (g_eps - g_base) / eps;
    }
    default:
        throw domain_error(
            "finite-difference influence covers sd, mean deviation and Gini");
    }
}

} // namespace scalekit
