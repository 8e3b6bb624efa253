#include <cmath>

#include "scalekit/closedform.hpp"
#include "scalekit/distributions.hpp"
#include "scalekit/errors.hpp"
#include "scalekit/influence.hpp"
#include "scalekit/oracle.hpp"
#include "scalekit/special.hpp"
#include "test_support.hpp"

namespace {

scalekit::DistributionSpec parse(const std::string& text) {
    return scalekit::parse_distribution(text);
}

// E[X^2 Phi(X)^2] for standard normal X, to 20 digits (mpmath):
constexpr double kX2PhiPhi2 = 0.42522148257029867492;
// J for the standard normal: sqrt(3)/(2 pi) - 1/6.
constexpr double kJNormal = 0.10899778104422935809;

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("interval quadrature on basic integrals") {
    const auto r = scalekit::integrate_interval(
        [](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK_ABS(r.value, 1.0 / 3.0, 1e-12);
    CHECK(r.evaluations > 0);
    CHECK(r.abs_error_estimate >= 0.0);

    const auto zero = scalekit::integrate_interval(
        [](double x) { return x * x; }, 2.0, 2.0, 1e-12);
    CHECK(zero.value == 0.0);

    CHECK_THROWS_AS(scalekit::integrate_interval(
                        [](double x) { return x; }, 1.0, 0.0, 1e-12),
                    scalekit::domain_error);
    CHECK_THROWS_AS(
        scalekit::integrate_interval([](double x) { return x; }, 0.0,
                                     std::numeric_limits<double>::infinity(),
                                     1e-12),
        scalekit::domain_error);
}

TEST_CASE("half-line quadrature") {
    const auto above = scalekit::integrate_above(
        [](double x) { return std::exp(-x); }, 0.0, 1e-12);
    CHECK_ABS(above.value, 1.0, 1e-10);
    const auto below = scalekit::integrate_below(
        [](double x) { return std::exp(x); }, 0.0, 1e-12);
    CHECK_ABS(below.value, 1.0, 1e-10);
    const auto shifted = scalekit::integrate_above(
        [](double x) { return std::exp(-(x - 2.0)); }, 2.0, 1e-12);
    CHECK_ABS(shifted.value, 1.0, 1e-10);
}

TEST_CASE("whole-line quadrature hits tight tolerances") {
    const auto mass = scalekit::integrate_real_line(
        [](double x) { return scalekit::std_normal_pdf(x); }, 1e-13);
    CHECK_ABS(mass.value, 1.0, 1e-12);

    const auto second = scalekit::integrate_real_line(
        [](double x) { return x * x * scalekit::std_normal_pdf(x); }, 1e-12);
    CHECK_ABS(second.value, 1.0, 1e-10);

    // E[X^2 Phi(X)^2]: the identity behind the closed-form normal J.
    const auto i1 = scalekit::integrate_real_line(
        [](double x) {
            const double F = scalekit::std_normal_cdf(x);
            return x * x * scalekit::std_normal_pdf(x) * F * F;
        },
        1e-12);
    CHECK_ABS(i1.value, kX2PhiPhi2, 1e-10);
    // ... and the implied normal J = 3 E[X^2 Phi(X)^2] - 7/6.
    CHECK_ABS(3.0 * i1.value - 7.0 / 6.0, kJNormal, 1e-10);
}

TEST_CASE("an unattainable tolerance raises accuracy_error with a estimate") {
    bool threw = false;
    try {
        scalekit::integrate_real_line(
            [](double x) { return x * x * scalekit::std_normal_pdf(x); },
            1e-30);
    } catch (const scalekit::accuracy_error& e) {
        threw = true;
        CHECK_ABS(e.best_estimate, 1.0, 1e-9);
        CHECK(e.error_estimate > 0.0);
        CHECK(e.error_estimate > 1e-30);
    }
    CHECK(threw);
}

TEST_CASE("support-aware integration clips to finite bounds") {
    const auto uni = parse("uniform:-2,5");
    CHECK_ABS(scalekit::integrate_support(
                  uni, [&](double x) { return scalekit::pdf(uni, x); }, 1e-12)
                  .value,
              1.0, 1e-12);
    CHECK_ABS(scalekit::integrate_support(
                  uni, [&](double x) { return x * scalekit::pdf(uni, x); },
                  1e-12)
                  .value,
              1.5, 1e-11);
    const auto lap = parse("laplace:0,1");
    CHECK_ABS(scalekit::integrate_support(
                  lap, [&](double x) { return scalekit::pdf(lap, x); }, 1e-12)
                  .value,
              1.0, 1e-10);
}

TEST_CASE("Gini mean difference by quadrature") {
    CHECK_ABS(scalekit::g_by_quadrature(parse("normal")),
              1.1283791670955125739, 1e-8);
    CHECK_ABS(scalekit::g_by_quadrature(parse("laplace:0,1")), 1.5, 1e-8);
    CHECK_ABS(scalekit::g_by_quadrature(parse("uniform:0,1")), 1.0 / 3.0,
              1e-9);
    CHECK_ABS(scalekit::g_by_quadrature(parse("t:16")),
              scalekit::population_g(parse("t:16")), 1e-8);
    CHECK_ABS(scalekit::g_by_quadrature(parse("nm:3,0.008")),
              scalekit::population_g(parse("nm:3,0.008")), 1e-8);
}

TEST_CASE("triple-ordering integral J by quadrature") {
    CHECK_ABS(scalekit::j_by_quadrature(parse("normal")), kJNormal, 1e-8);
    CHECK_ABS(scalekit::j_by_quadrature(parse("uniform:0,1")), 1.0 / 120.0,
              1e-10);
    CHECK_ABS(scalekit::j_by_quadrature(parse("laplace:0,1")), 5.0 / 24.0,
              1e-9);
    CHECK_ABS(scalekit::j_by_quadrature(parse("nm:3,0.05")),
              scalekit::integral_J(parse("nm:3,0.05")), 1e-8);
    CHECK_ABS(scalekit::j_by_quadrature(parse("t:16")),
              scalekit::integral_J(parse("t:16")), 1e-8);
}

TEST_CASE("t second-moment shape constants") {
    // K_nu = E[X^2 F_nu(X)^2] under t_nu, frozen from high-precision runs.
    CHECK_ABS(scalekit::k_nu(5), 0.7361511838069446, 1e-10);
    CHECK_ABS(scalekit::k_nu(6), 0.6573426573426573, 1e-10);
    CHECK_ABS(scalekit::k_nu(7), 0.6103485485034718, 1e-10);
    CHECK_ABS(scalekit::k_nu(10), 0.5403374164311033, 1e-10);
    CHECK_ABS(scalekit::k_nu(15), 0.4958061398828396, 1e-10);
    CHECK_ABS(scalekit::k_nu(16), 0.4907360209943489, 1e-10);
    CHECK_ABS(scalekit::k_nu(25), 0.4650096417544542, 1e-10);
    CHECK_ABS(scalekit::k_nu(40), 0.4492689765401641, 1e-10);
    CHECK_ABS(scalekit::k_nu(41), 0.4486510207137693, 1e-10);
    CHECK_ABS(scalekit::k_nu(100), 0.4345329942045006, 1e-10);
    // Large nu approaches the normal limit E[X^2 Phi(X)^2].
    CHECK_ABS(scalekit::k_nu(1000000), kX2PhiPhi2, 1e-5);
    // Memoization returns the identical value.
    CHECK(scalekit::k_nu(16) == scalekit::k_nu(16));
    CHECK_THROWS_AS(scalekit::k_nu(2), scalekit::domain_error);
}

TEST_CASE("finite-difference influence approximations") {
    const auto norm = parse("normal");
    using scalekit::ScaleKind;
    CHECK_ABS(scalekit::if_finite_difference(ScaleKind::Sd, norm, 1.0, 1e-6),
              0.0, 1e-5);
    CHECK_ABS(
        scalekit::if_finite_difference(ScaleKind::MeanDev, norm, 0.0, 1e-6),
        -0.79788456080286535588, 1e-4);
    CHECK_ABS(scalekit::if_finite_difference(ScaleKind::Gini, norm, 0.0, 1e-6),
              -0.66098921258529443603, 1e-4);
    // Cross-check against the analytic influence value elsewhere too.
    const auto lap = parse("laplace:0,1");
    CHECK_ABS(scalekit::if_finite_difference(ScaleKind::Gini, lap, 1.3, 1e-6),
              scalekit::influence_value(ScaleKind::Gini, lap, 1.3), 1e-4);
    CHECK_THROWS_AS(
        scalekit::if_finite_difference(ScaleKind::Sd, norm, 1.0, 0.0),
        scalekit::domain_error);
    CHECK_THROWS_AS(
        scalekit::if_finite_difference(ScaleKind::Sd, norm, 1.0, 0.5),
        scalekit::domain_error);
    CHECK_THROWS_AS(
        scalekit::if_finite_difference(ScaleKind::Iqr, norm, 1.0, 1e-6),
        scalekit::domain_error);
}

} // TEST_SUITE("oracle")
