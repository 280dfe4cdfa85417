// Compares the serial and OpenMP execution paths of the two parallel kernels:
// the analytic sweep grid and the simulation replication batch. Both paths are
// bit-identical by construction; this only measures wall time.
#include <algorithm>
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rtq/simulator.hpp"
#include "rtq/sweep.hpp"

namespace {

template <typename F>
double best_of(int reps, const F& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

volatile double sink;  // keeps the optimizer from dropping the work

}  // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("kernel benchmark, %d OpenMP thread(s)\n", threads);
    std::printf("(speedup ~1 is expected on a single hardware thread)\n\n");

    rtq::sweep::ExperimentSpec spec;
    spec.model = rtq::sweep::Model::joint;
    spec.lambda = {0.25, 10, 200};
    spec.d = {0.05, 2, 200};
    spec.theta = {0, 0, 1};
    const double sweep_serial = best_of(3, [&] {
        sink = rtq::sweep::run_sweep(spec, rtq::Exec::Serial).back().gamma_total;
    });
    const double sweep_parallel = best_of(3, [&] {
        sink = rtq::sweep::run_sweep(spec, rtq::Exec::Parallel).back().gamma_total;
    });

    const rtq::ModelParams p{2, 2, 1, 0.8, 0.1};
    rtq::SimConfig cfg;
    cfg.seed = 7;
    cfg.arrivals_target = 200000;
    cfg.replications = 8;
    const double sim_serial = best_of(3, [&] {
        sink = rtq::replicate(p, rtq::Policy::CodingSkipping, cfg, rtq::Exec::Serial)
                   .goodput_flow1;
    });
    const double sim_parallel = best_of(3, [&] {
        sink = rtq::replicate(p, rtq::Policy::CodingSkipping, cfg, rtq::Exec::Parallel)
                   .goodput_flow1;
    });

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");
    std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "sweep 200x200 joint grid", sweep_serial,
                sweep_parallel, sweep_serial / sweep_parallel);
    std::printf("%-28s %9.3fs %9.3fs %7.2fx\n", "simulate 8 x 200k arrivals", sim_serial,
                sim_parallel, sim_serial / sim_parallel);
    return 0;
}
