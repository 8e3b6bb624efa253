#include "scalekit/closedform.hpp"

#include "scalekit/errors.hpp"
#include "scalekit/oracle.hpp"
#include "scalekit/special.hpp"

#include <cmath>
#include <type_traits>
#include <variant>

namespace scalekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0)) {
        throw domain_error("mixture integrals are defined for lambda > 0");
    }
}

} // namespace

double population_sigma(const DistributionSpec& dist) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return v.sigma;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return std::sqrt(2.0) * v.alpha;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (v.b - v.a) / std::sqrt(12.0);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double nu = v.nu;
                return std::sqrt(nu / (nu - 2.0));
            } else {
                return std::sqrt(v.epsilon * v.lambda * v.lambda + 1.0 -
                                 v.epsilon);
            }
        },
        dist.value());
}

double population_d(const DistributionSpec& dist) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return v.sigma * std::sqrt(2.0 / kPi);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return v.alpha;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return 0.25 * (v.b - v.a);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double nu = v.nu;
                return 2.0 * std::sqrt(nu) /
                       ((nu - 1.0) * std::exp(log_beta(0.5 * nu, 0.5)));
            } else {
                return std::sqrt(2.0 / kPi) *
                       (v.epsilon * v.lambda + 1.0 - v.epsilon);
            }
        },
        dist.value());
}

double population_g(const DistributionSpec& dist) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return 2.0 * v.sigma / std::sqrt(kPi);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return 1.5 * v.alpha;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (v.b - v.a) / 3.0;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double nu = v.nu;
                return 4.0 * std::sqrt(nu) / (nu - 1.0) *
                       std::exp(log_beta(0.5 * nu + 0.5, nu - 0.5) -
                                log_beta(0.5 * nu, 0.5) -
                                log_beta(0.5 * nu, nu));
            } else {
                const double l = v.lambda;
                const double e = v.epsilon;
                return 2.0 / std::sqrt(kPi) *
                       (l * e * e + (1.0 - e) * (1.0 - e) +
                        e * (1.0 - e) * std::sqrt(2.0 * (1.0 + l * l)));
            }
        },
        dist.value());
}

double mixture_integral_a(double lambda) {
    require_positive_lambda(lambda);
    return 1.0 / (4.0 * kPi * std::sqrt(1.0 + 2.0 * lambda * lambda));
}

double mixture_integral_b() { return 0.5; }

double mixture_integral_c(double lambda) {
    require_positive_lambda(lambda);
    const double l2 = lambda * lambda;
    const double zeta = std::sqrt(2.0 + l2);
    return 0.25 + lambda / (kPi * (1.0 + l2) * zeta) +
           std::atan(1.0 / (lambda * zeta)) / (2.0 * kPi);
}

double mixture_integral_d(double lambda) {
    require_positive_lambda(lambda);
    const double l2 = lambda * lambda;
    const double root = std::sqrt(2.0 * l2 + 1.0);
    return 0.25 + (3.0 * l2 + 1.0) / (4.0 * kPi * (1.0 + l2) * root) +
           std::atan(1.0 / root) / (2.0 * kPi);
}

double mixture_integral_e(double lambda) {
    require_positive_lambda(lambda);
    return lambda / (2.0 * kPi * std::sqrt(1.0 + 2.0 * lambda * lambda));
}

namespace {

// Primary assembly of the mixture J from the five building-block integrals.
// The epsilon^3/(1-epsilon)^3 group collects the pure components, the B term
// the cross second moment, and the two mixed groups the contaminated-triple
// configurations evaluated at lambda and 1/lambda.
double mixture_j_assembled(double lambda, double epsilon) {
    const double l = lambda;
    const double e = epsilon;
    const double l2 = l * l;
    const double om = 1.0 - e;
    const double pure = (e * e * e * l2 + om * om * om) *
                        (2.0 * mixture_integral_a(1.0) + mixture_integral_c(1.0) +
                         mixture_integral_e(1.0));
    const double cross = -(e * l2 + om) * mixture_integral_b();
    const double heavy_pair =
        e * e * om *
        (2.0 * (2.0 + l2) * mixture_integral_a(1.0 / l) + mixture_integral_c(l) +
         2.0 * l2 * mixture_integral_d(1.0 / l) +
         l * (2.0 + l2) * mixture_integral_e(1.0 / l));
    const double light_pair =
        e * om * om *
        (2.0 * (2.0 * l2 + 1.0) * mixture_integral_a(l) +
         l2 * mixture_integral_c(1.0 / l) + 2.0 * mixture_integral_d(l) +
         (1.0 / l + 2.0 * l) * mixture_integral_e(l));
    return pure + cross + heavy_pair + light_pair;
}

} // namespace

double mixture_j_rearranged(double lambda, double epsilon) {
    require_positive_lambda(lambda);
    const double l = lambda;
    const double e = epsilon;
    const double om = 1.0 - e;
    const double l2 = l * l;
    const double zeta = std::sqrt(2.0 + l2);           // zeta(lambda)
    const double zeta_inv = std::sqrt(2.0 + 1.0 / l2); // zeta(1/lambda)
    double j = (1.0 / 3.0 + std::sqrt(3.0) / (2.0 * kPi)) *
                   (e * e * e * l2 + om * om * om) -
               0.5 * (e * l2 + om);
    j += e * e * om *
         (0.5 * l2 + 0.25 + 3.0 * l * zeta / (2.0 * kPi) +
          (l2 / kPi) * std::atan(l / zeta) +
          std::atan(1.0 / (l * zeta)) / (2.0 * kPi));
    j += e * om * om *
         (0.25 * l2 + 0.5 + 3.0 * std::sqrt(1.0 + 2.0 * l2) / (2.0 * kPi) +
          (l2 / (2.0 * kPi)) * std::atan(l / zeta_inv) +
          std::atan(1.0 / (l * zeta_inv)) / kPi);
    return j;
}

double integral_J(const DistributionSpec& dist) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return (std::sqrt(3.0) / (2.0 * kPi) - 1.0 / 6.0) * v.sigma *
                       v.sigma;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return 5.0 / 24.0 * v.alpha * v.alpha;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (v.b - v.a) * (v.b - v.a) / 120.0;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double nu = v.nu;
                const double beta_part =
                    2.0 * nu / ((nu - 1.0) * (nu - 1.0)) *
                    std::exp(log_beta(1.5 * nu - 1.0, 0.5) -
                             3.0 * log_beta(0.5 * nu, 0.5));
                return beta_part - nu / (2.0 * (nu - 2.0)) + k_nu(v.nu);
            } else {
                return mixture_j_assembled(v.lambda, v.epsilon);
            }
        },
        dist.value());
}

double asv(ScaleKind kind, const DistributionSpec& dist) {
    switch (kind) {
    case ScaleKind::Sd: {
        const MomentSet m = moments(dist);
        return (m.mu4 - 4.0 * m.mu3 * m.mu1 + 3.0 * m.mu2 * m.mu2) /
                   (4.0 * m.sigma2) -
               m.sigma2;
    }
    case ScaleKind::MeanDev: {
        const double sigma = population_sigma(dist);
        const double d = population_d(dist);
        return sigma * sigma - d * d;
    }
    case ScaleKind::Gini: {
        const double sigma = population_sigma(dist);
        const double g = population_g(dist);
        return 4.0 * (sigma * sigma + 4.0 * integral_J(dist) - g * g);
    }
    case ScaleKind::Iqr: {
        const double f_q3 = pdf(dist, quantile(dist, 0.75));
        return 0.25 / (f_q3 * f_q3);
    }
    }
    throw domain_error("unknown scale kind");
}

double are(ScaleKind kind, const DistributionSpec& dist) {
    if (kind == ScaleKind::Sd) return 1.0;
    double value;
    switch (kind) {
    case ScaleKind::MeanDev:
        value = population_d(dist);
        break;
    case ScaleKind::Gini:
        value = population_g(dist);
        break;
    case ScaleKind::Iqr:
        value = quantile(dist, 0.75) - quantile(dist, 0.25);
        break;
    default:
        throw domain_error("unknown scale kind");
    }
    const double sigma = population_sigma(dist);
    return asv(ScaleKind::Sd, dist) / asv(kind, dist) * value * value /
           (sigma * sigma);
}

double lomnicki_var(const DistributionSpec& dist, std::size_t n) {
    if (n < 2) {
        throw domain_error("variance of the mean difference needs n >= 2");
    }
    const double nn = static_cast<double>(n);
    const double sigma = population_sigma(dist);
    const double g = population_g(dist);
    const double j = integral_J(dist);
    return (4.0 * (nn - 1.0) * sigma * sigma + 16.0 * (nn - 2.0) * j -
            2.0 * (2.0 * nn - 3.0) * g * g) /
           (nn * (nn - 1.0));
}

PopulationSummary summarize(const DistributionSpec& dist) {
    PopulationSummary s;
    s.sigma = population_sigma(dist);
    s.d = population_d(dist);
    s.g = population_g(dist);
    s.J = integral_J(dist);
    s.asv_sd = asv(ScaleKind::Sd, dist);
    s.asv_d = asv(ScaleKind::MeanDev, dist);
    s.asv_g = asv(ScaleKind::Gini, dist);
    s.asv_iqr = asv(ScaleKind::Iqr, dist);
    s.are_g = are(ScaleKind::Gini, dist);
    s.are_d = are(ScaleKind::MeanDev, dist);
    s.are_iqr = are(ScaleKind::Iqr, dist);
    return s;
}

} // namespace scalekit
