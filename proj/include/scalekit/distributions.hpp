#pragma once

// The five symmetric distribution families: normal, Laplace, uniform,
// Student-t (integer nu >= 5) and the scale-contaminated normal mixture
// (1-eps)N(0,1) + eps*N(0,lambda^2). Densities, cdfs, quantiles, the first
// four non-central moments, truncated first moments and seeded samplers.

#include "scalekit/errors.hpp"
#include "scalekit/rng.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scalekit {

enum class Family { Normal, Laplace, Uniform, StudentT, NormalMixture };

struct Normal {
    double mu = 0.0;
    double sigma = 1.0;
};

struct Laplace {
    double mu = 0.0;
    double alpha = 1.0;
};

struct Uniform {
    double a = 0.0;
    double b = 1.0;
};

struct StudentT {
    int nu = 5;
};

// Mixture (1-eps)N(0,1) + eps N(0,lambda^2). Any lambda > 0 is accepted:
// lambda and 1/lambda describe the same family up to scale and swapped eps,
// and the efficiency-curve duality check needs both sides constructible.
struct NormalMixture {
    double lambda = 3.0;
    double epsilon = 0.0;
};

// Validated tagged union over the five families. Construction rejects invalid
// parameters (sigma <= 0, alpha <= 0, b <= a, nu < 5, eps outside [0,1],
// lambda <= 0, non-finite values); it never clamps.
class DistributionSpec {
public:
    using Value = std::variant<Normal, Laplace, Uniform, StudentT, NormalMixture>;

    explicit DistributionSpec(Value v);

    const Value& value() const { return v_; }
    Family family() const;

    // Family name as used in CSV output and the CLI grammar.
    std::string family_name() const;

    // Round-trippable "family:params" string, e.g. "nm:3,0.008".
    std::string spec_string() const;

private:
    Value v_;
};

// Parse the CLI mini-grammar:
//   normal[:mu,sigma] | laplace[:mu,alpha] | uniform:a,b | t:nu | nm:lambda,epsilon
// Defaults: normal -> N(0,1), laplace -> L(0,1).
DistributionSpec parse_distribution(const std::string& text);

struct MomentSet {
    double mu1 = 0.0;    // E X
    double mu2 = 0.0;    // E X^2
    double mu3 = 0.0;    // E X^3
    double mu4 = 0.0;    // E X^4
    double sigma2 = 0.0; // mu2 - mu1^2
};

double pdf(const DistributionSpec& d, double x);
double cdf(const DistributionSpec& d, double x);

// Inverse cdf by bracketing + bisection; |cdf(quantile(p)) - p| <= 1e-12.
// Throws domain_error unless 0 < p < 1.
double quantile(const DistributionSpec& d, double p);

// Exact closed-form non-central moments.
MomentSet moments(const DistributionSpec& d);

// Truncated first moment E[X 1{X >= x}], in closed form for every family.
double truncated_mean_above(const DistributionSpec& d, double x);

// Point of symmetry (mu, mu, (a+b)/2, 0, 0).
double symmetry_center(const DistributionSpec& d);

// Support endpoints; +-infinity for the unbounded families.
std::pair<double, double> support(const DistributionSpec& d);

// n i.i.d. draws, deterministic given the generator state. Normal variates
// use Box-Muller (two uniforms each, no caching); Laplace is a signed
// exponential; Student-t is Z*sqrt(nu/V) with V a sum of nu squared standard
// normals; the mixture picks its component with one Bernoulli(eps) uniform.
std::vector<double> sample(const DistributionSpec& d, SeededGenerator& rng, std::size_t n);

// Single standard normal draw from two uniforms (shared by samplers).
double draw_std_normal(SeededGenerator& rng);

} // namespace scalekit
