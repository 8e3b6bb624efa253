#include "scalekit/curves.hpp"
#include "scalekit/distributions.hpp"
#include "scalekit/montecarlo.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

double rel_gap(double a, double b) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing comparison of the OpenMP kernels against their "
                 "serial reference implementations."};
    long long reps = 20000;
    long long n = 50;
    long long grid = 41;
    app.add_option("--reps", reps, "Monte Carlo replications per run");
    app.add_option("--n", n, "Monte Carlo sample size");
    app.add_option("--grid", grid, "surface grid points per axis");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both variants run serially.\n");
#endif

    using scalekit::DistributionSpec;
    const DistributionSpec dist{scalekit::Normal{0.0, 1.0}};

    {
        std::printf("\nMonte Carlo cell: %s, n=%lld, reps=%lld\n",
                    dist.spec_string().c_str(), n, reps);
        auto t0 = std::chrono::steady_clock::now();
        const auto parallel = scalekit::run_cell(
            dist, static_cast<std::size_t>(n), static_cast<std::size_t>(reps),
            20230417, false);
        const double tp = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const auto serial = scalekit::run_cell_reference(
            dist, static_cast<std::size_t>(n), static_cast<std::size_t>(reps),
            20230417, false);
        const double ts = seconds_since(t0);

        std::printf("  parallel run_cell:           %8.3f s\n", tp);
        std::printf("  serial  run_cell_reference:  %8.3f s\n", ts);
        std::printf("  speedup: %.2fx\n", ts / tp);
        std::printf("  largest relative gap (gini n*var): %.3g\n",
                    rel_gap(parallel.gini.n_times_variance,
                            serial.gini.n_times_variance));
    }

    {
        const scalekit::AxisRange lambda_range{
            1.0, 6.0, static_cast<std::size_t>(grid)};
        const scalekit::AxisRange eps_range{-5.0, -0.31,
                                            static_cast<std::size_t>(grid)};
        std::printf("\nEfficiency surface: meandev vs sd, %lldx%lld grid\n",
                    grid, grid);
        auto t0 = std::chrono::steady_clock::now();
        const auto parallel = scalekit::are_surface(
            scalekit::ScaleKind::MeanDev, lambda_range, eps_range);
        const double tp = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const auto serial = scalekit::are_surface_reference(
            scalekit::ScaleKind::MeanDev, lambda_range, eps_range);
        const double ts = seconds_since(t0);

        double max_gap = 0.0;
        for (std::size_t i = 0; i < parallel.values.size(); ++i) {
            max_gap =
                std::fmax(max_gap, rel_gap(parallel.values[i], serial.values[i]));
        }
        std::printf("  parallel are_surface:           %8.3f s\n", tp);
        std::printf("  serial  are_surface_reference:  %8.3f s\n", ts);
        std::printf("  speedup: %.2fx\n", ts / tp);
        std::printf("  largest relative gap: %.3g\n", max_gap);
    }
    return 0;
}
