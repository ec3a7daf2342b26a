// Benchmark comparing the blocked scheme kernels against the dense reference
// path, and serial against OpenMP grid evaluation.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "su11/qfi.hpp"
#include "su11/schemes.hpp"
#include "su11/sweep.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double builder_pass(bool reference, unsigned n_max, unsigned phi_steps) {
    double sink = 0.0;
    for (unsigned n = 1; n <= n_max; ++n) {
        for (unsigned p = 0; p < phi_steps; ++p) {
            const double phi = std::numbers::pi * static_cast<double>(p) /
                               static_cast<double>(phi_steps);
            su11::SchemeConfig cfg;
            cfg.kind = su11::SchemeKind::partial;
            cfg.r = 0.1;
            cfg.loops = n;
            const auto out = reference ? su11::build_scheme_reference(cfg, phi)
                                       : su11::build_scheme(cfg, phi);
            sink += out.state.cov()(0, 0).real();
        }
    }
    return sink;
}

}  // namespace

int main(int argc, char** argv) {
    unsigned n_max = 24;
    unsigned phi_steps = 8;
    if (argc > 1) n_max = static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10));
    if (argc > 2) phi_steps = static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10));

    std::printf("partial-scheme builders, N = 1..%u, %u phases\n", n_max, phi_steps);
    const double t_ref = time_ms([&] { builder_pass(true, n_max, phi_steps); });
    const double t_blk = time_ms([&] { builder_pass(false, n_max, phi_steps); });
    std::printf("  dense reference : %9.2f ms\n", t_ref);
    std::printf("  blocked kernel  : %9.2f ms   (%.1fx)\n", t_blk, t_ref / t_blk);

    const auto points = su11::sweep::grid_points([] {
        su11::sweep::SweepSpec spec;
        spec.schemes = {su11::SchemeKind::partial, su11::SchemeKind::sequential};
        spec.r_values = {0.1};
        spec.phi_min = 0.0;
        spec.phi_max = std::numbers::pi;
        spec.phi_steps = 16;
        spec.loops_min = 1;
        spec.loops_max = 24;
        return spec;
    }());
    std::printf("sweep evaluation, %zu grid points\n", points.size());
    const double t_serial = time_ms([&] { su11::sweep::evaluate(points, {false}); });
    const double t_par = time_ms([&] { su11::sweep::evaluate(points, {true}); });
    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp single
        threads = omp_get_num_threads();
    }
#endif
    std::printf("  serial          : %9.2f ms\n", t_serial);
    std::printf("  openmp (%2d thr) : %9.2f ms   (%.1fx)\n", threads, t_par, t_serial / t_par);
    return 0;
}
