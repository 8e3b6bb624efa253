#include "scalekit/distributions.hpp"
#include "scalekit/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace scalekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw domain_error(std::string(what) + " must be finite, got " + num(v));
    }
}

// Student-t density scale factor c_nu = 1/(sqrt(nu) B(nu/2, 1/2)).
double t_scale(double nu) {
    return std::exp(-0.5 * std::log(nu) - log_beta(0.5 * nu, 0.5));
}

double t_pdf(double nu, double x) {
    // exp/log1p form keeps precision for large nu, where (1 + x^2/nu)^k
    // evaluated directly would lose the small increment.
    return t_scale(nu) * std::exp(-0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

} // namespace

DistributionSpec::DistributionSpec(Value v) : v_(std::move(v)) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Normal>) {
                require_finite(d.mu, "normal mu");
                require_finite(d.sigma, "normal sigma");
                if (!(d.sigma > 0.0)) {
                    throw domain_error("normal sigma must be > 0, got " + num(d.sigma));
                }
            } else if constexpr (std::is_same_v<T, Laplace>) {
                require_finite(d.mu, "laplace mu");
                require_finite(d.alpha, "laplace alpha");
                if (!(d.alpha > 0.0)) {
                    throw domain_error("laplace alpha must be > 0, got " + num(d.alpha));
                }
            } else if constexpr (std::is_same_v<T, Uniform>) {
                require_finite(d.a, "uniform a");
                require_finite(d.b, "uniform b");
                if (!(d.b > d.a)) {
                    throw domain_error("uniform requires b > a, got a=" + num(d.a) +
                                       ", b=" + num(d.b));
                }
            } else if constexpr (std::is_same_v<T, StudentT>) {
                if (d.nu < 5) {
                    // The sd asymptotic variance needs a finite fourth moment
                    // (nu > 4); smaller nu would publish undefined values.
                    throw domain_error("t requires integer nu >= 5, got " +
                                       std::to_string(d.nu));
                }
            } else if constexpr (std::is_same_v<T, NormalMixture>) {
                require_finite(d.lambda, "mixture lambda");
                require_finite(d.epsilon, "mixture epsilon");
                if (!(d.lambda > 0.0)) {
                    throw domain_error("mixture lambda must be > 0, got " + num(d.lambda));
                }
                if (!(d.epsilon >= 0.0 && d.epsilon <= 1.0)) {
                    throw domain_error("mixture epsilon must be in [0,1], got " +
                                       num(d.epsilon));
                }
            }
        },
        v_);
}

Family DistributionSpec::family() const {
    return static_cast<Family>(v_.index());
}

std::string DistributionSpec::family_name() const {
    switch (family()) {
        case Family::Normal: return "normal";
        case Family::Laplace: return "laplace";
        case Family::Uniform: return "uniform";
        case Family::StudentT: return "t";
        case Family::NormalMixture: return "nm";
    }
    return "?";
}

std::string DistributionSpec::spec_string() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return "normal:" + num(d.mu) + "," + num(d.sigma);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return "laplace:" + num(d.mu) + "," + num(d.alpha);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return "uniform:" + num(d.a) + "," + num(d.b);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                return "t:" + std::to_string(d.nu);
            } else {
                return "nm:" + num(d.lambda) + "," + num(d.epsilon);
            }
        },
        v_);
}

DistributionSpec parse_distribution(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t pos = 0;
                args.push_back(std::stod(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw domain_error("bad numeric parameter '" + tok +
                                   "' in distribution '" + text + "'");
            }
        }
        if (rest.empty() || args.empty()) {
            throw domain_error("missing parameters in distribution '" + text + "'");
        }
    }

    auto arity = [&](std::size_t want) {
        if (args.size() != want) {
            throw domain_error("distribution '" + text + "' expects " +
                               std::to_string(want) + " parameters, got " +
                               std::to_string(args.size()));
        }
    };

    if (name == "normal") {
        if (args.empty()) return DistributionSpec(Normal{});
        arity(2);
        return DistributionSpec(Normal{args[0], args[1]});
    }
    if (name == "laplace") {
        if (args.empty()) return DistributionSpec(Laplace{});
        arity(2);
        return DistributionSpec(Laplace{args[0], args[1]});
    }
    if (name == "uniform") {
        arity(2);
        return DistributionSpec(Uniform{args[0], args[1]});
    }
    if (name == "t") {
        arity(1);
        const double nu = args[0];
        if (nu != std::floor(nu) || nu < -1e18 || nu > 1e18) {
            throw domain_error("t requires an integer nu, got " + num(nu));
        }
        return DistributionSpec(StudentT{static_cast<int>(nu)});
    }
    if (name == "nm") {
        arity(2);
        return DistributionSpec(NormalMixture{args[0], args[1]});
    }
    throw domain_error("unknown distribution family '" + name +
                       "' (expected normal, laplace, uniform, t or nm)");
}

double pdf(const DistributionSpec& d, double x) {
    return std::visit(
        [x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return std_normal_pdf((x - v.mu) / v.sigma) / v.sigma;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return 0.5 / v.alpha * std::exp(-std::abs(x - v.mu) / v.alpha);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (x >= v.a && x <= v.b) ? 1.0 / (v.b - v.a) : 0.0;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                return t_pdf(v.nu, x);
            } else {
                return v.epsilon * std_normal_pdf(x / v.lambda) / v.lambda +
                       (1.0 - v.epsilon) * std_normal_pdf(x);
            }
        },
        d.value());
}

double cdf(const DistributionSpec& d, double x) {
    return std::visit(
        [x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return std_normal_cdf((x - v.mu) / v.sigma);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                const double z = (x - v.mu) / v.alpha;
                return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= v.a) return 0.0;
                if (x >= v.b) return 1.0;
                return (x - v.a) / (v.b - v.a);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                return student_t_cdf(v.nu, x);
            } else {
                return v.epsilon * std_normal_cdf(x / v.lambda) +
                       (1.0 - v.epsilon) * std_normal_cdf(x);
            }
        },
        d.value());
}

double quantile(const DistributionSpec& d, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw domain_error("quantile requires p in (0,1), got " + num(p));
    }
    // Every family here is symmetric: the midpoint quantile is the center,
    // exactly, where bisection would stop at cdf roundoff instead.
    if (p == 0.5) return symmetry_center(d);
    auto [lo, hi] = support(d);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        // Expand an analytic bracket around the symmetry center until the
        // cdf straddles p. Doubling from 1 covers all tail weights here.
        const double c = symmetry_center(d);
        double w = 1.0;
        lo = c - w;
        hi = c + w;
        while (cdf(d, lo) > p) {
            w *= 2.0;
            lo = c - w;
            if (w > 1e300) break;
        }
        w = 1.0;
        while (cdf(d, hi) < p) {
            w *= 2.0;
            hi = c + w;
            if (w > 1e300) break;
        }
    }
    // Plain bisection: robust for every family including extreme mixture
    // tails; ~90 halvings reach the last representable digit.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval exhausted
        if (cdf(d, mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

MomentSet moments(const DistributionSpec& d) {
    return std::visit(
        [](const auto& v) -> MomentSet {
            using T = std::decay_t<decltype(v)>;
            MomentSet m;
            if constexpr (std::is_same_v<T, Normal>) {
                const double mu = v.mu, s2 = v.sigma * v.sigma;
                m.mu1 = mu;
                m.mu2 = s2 + mu * mu;
                m.mu3 = mu * mu * mu + 3.0 * mu * s2;
                m.mu4 = mu * mu * mu * mu + 6.0 * mu * mu * s2 + 3.0 * s2 * s2;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                const double mu = v.mu, a2 = v.alpha * v.alpha;
                m.mu1 = mu;
                m.mu2 = mu * mu + 2.0 * a2;
                m.mu3 = mu * mu * mu + 6.0 * mu * a2;
                m.mu4 = mu * mu * mu * mu + 12.0 * mu * mu * a2 + 24.0 * a2 * a2;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                // E X^k = (b^{k+1} - a^{k+1}) / ((k+1)(b-a))
                const double a = v.a, b = v.b, w = b - a;
                auto pw = [](double x, int k) { return std::pow(x, k); };
                m.mu1 = (pw(b, 2) - pw(a, 2)) / (2.0 * w);
                m.mu2 = (pw(b, 3) - pw(a, 3)) / (3.0 * w);
                m.mu3 = (pw(b, 4) - pw(a, 4)) / (4.0 * w);
                m.mu4 = (pw(b, 5) - pw(a, 5)) / (5.0 * w);
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double nu = v.nu;
                m.mu1 = 0.0;
                m.mu2 = nu / (nu - 2.0);
                m.mu3 = 0.0;
                m.mu4 = 3.0 * nu * nu / ((nu - 2.0) * (nu - 4.0));
            } else {
                const double l2 = v.lambda * v.lambda, e = v.epsilon;
                m.mu1 = 0.0;
                m.mu2 = e * l2 + (1.0 - e);
                m.mu3 = 0.0;
                m.mu4 = 3.0 * e * l2 * l2 + 3.0 * (1.0 - e);
            }
            m.sigma2 = m.mu2 - m.mu1 * m.mu1;
            return m;
        },
        d.value());
}

namespace {

// E[X 1{X >= x}] for N(mu, sigma).
double normal_truncated_mean(double mu, double sigma, double x) {
    const double z = (x - mu) / sigma;
    return mu * std_normal_cdf(-z) + sigma * std_normal_pdf(z);
}

} // namespace

double truncated_mean_above(const DistributionSpec& d, double x) {
    return std::visit(
        [&d, x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return normal_truncated_mean(v.mu, v.sigma, x);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                if (x >= v.mu) {
                    return 0.5 * (x + v.alpha) * std::exp(-(x - v.mu) / v.alpha);
                }
                // Reflect around mu: E[X 1{X>=x}] = mu1 - E[X 1{X<=x}] and
                // E[X 1{X<=x}] = 2 mu (1 - F(2mu-x)) - E[X 1{X>=2mu-x}].
                const double r = 2.0 * v.mu - x;
                const double upper = 0.5 * (r + v.alpha) * std::exp(-(r - v.mu) / v.alpha);
                const double tail = 0.5 * std::exp(-(r - v.mu) / v.alpha); // 1 - F(r)
                return v.mu - 2.0 * v.mu * tail + upper;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= v.a) return 0.5 * (v.a + v.b);
                if (x >= v.b) return 0.0;
                return (v.b * v.b - x * x) / (2.0 * (v.b - v.a));
            } else if constexpr (std::is_same_v<T, StudentT>) {
                // Exact antiderivative of y f_nu(y):
                // E[X 1{X>=x}] = c_nu nu/(nu-1) (1 + x^2/nu)^{-(nu-1)/2}.
                const double nu = v.nu;
                return t_scale(nu) * nu / (nu - 1.0) *
                       std::exp(-0.5 * (nu - 1.0) * std::log1p(x * x / nu));
            } else {
                return v.epsilon * v.lambda * std_normal_pdf(x / v.lambda) +
                       (1.0 - v.epsilon) * std_normal_pdf(x);
            }
        },
        d.value());
}

double symmetry_center(const DistributionSpec& d) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                return v.mu;
            } else if constexpr (std::is_same_v<T, Laplace>) {
                return v.mu;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return 0.5 * (v.a + v.b);
            } else {
                return 0.0;
            }
        },
        d.value());
}

std::pair<double, double> support(const DistributionSpec& d) {
    if (const auto* u = std::get_if<Uniform>(&d.value())) {
        return {u->a, u->b};
    }
    return {-kInf, kInf};
}

double draw_std_normal(SeededGenerator& rng) {
    // Box-Muller, consuming exactly two uniforms; no cached second value, so
    // the stream position is a pure function of the draw count.
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::vector<double> sample(const DistributionSpec& d, SeededGenerator& rng, std::size_t n) {
    std::vector<double> out(n);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Normal>) {
                for (auto& x : out) x = v.mu + v.sigma * draw_std_normal(rng);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                for (auto& x : out) {
                    const double e = -std::log(rng.uniform_pos());
                    const bool flip = rng.next_u64() & 1;
                    x = v.mu + v.alpha * (flip ? -e : e);
                }
            } else if constexpr (std::is_same_v<T, Uniform>) {
                for (auto& x : out) x = v.a + (v.b - v.a) * rng.uniform();
            } else if constexpr (std::is_same_v<T, StudentT>) {
                for (auto& x : out) {
                    const double z = draw_std_normal(rng);
                    double v2 = 0.0;
                    for (int k = 0; k < v.nu; ++k) {
                        const double w = draw_std_normal(rng);
                        v2 += w * w;
                    }
                    x = z * std::sqrt(v.nu / v2);
                }
            } else {
                for (auto& x : out) {
                    const bool contaminated = rng.uniform() < v.epsilon;
                    const double z = draw_std_normal(rng);
                    x = contaminated ? v.lambda * z : z;
                }
            }
        },
        d.value());
    return out;
}

} // namespace scalekit
