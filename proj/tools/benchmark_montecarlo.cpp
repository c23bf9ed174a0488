// Times the serial reference experiment loop against the OpenMP kernel on a
// small grid and checks that both produce the same table.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tvtest/montecarlo.hpp"

namespace {

tvtest::ExperimentConfig bench_config(int replications, int boot_iters) {
    tvtest::ExperimentConfig cfg = tvtest::table_preset(1);
    cfg.dgp_grid.resize(1);  // beta0=0.3 only
    cfg.sample_sizes = {100, 200};
    cfg.replications = replications;
    cfg.bootstrap.iterations = boot_iters;
    cfg.master_seed = 7;
    return cfg;
}

template <typename F>
double time_seconds(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial reference vs OpenMP experiment kernel"};
    int replications = 200;
    int boot_iters = 199;
    app.add_option("--replications", replications, "replications per cell");
    app.add_option("--boot-iters", boot_iters, "bootstrap iterations");
    CLI11_PARSE(app, argc, argv);

    const tvtest::ExperimentConfig cfg = bench_config(replications, boot_iters);

    tvtest::RejectionTable serial_table;
    tvtest::RejectionTable parallel_table;
    const double t_serial =
        time_seconds([&] { serial_table = tvtest::run_experiment_reference(cfg); });
    const int threads = omp_get_max_threads();
    const double t_parallel =
        time_seconds([&] { parallel_table = tvtest::run_experiment(cfg, threads); });

    std::printf("%-22s %10s\n", "variant", "seconds");
    std::printf("%-22s %10.3f\n", "serial reference", t_serial);
    std::printf("%-22s %10.3f  (%d threads, speedup %.2fx)\n", "openmp kernel", t_parallel,
                threads, t_serial / t_parallel);

    const bool same = serial_table.cells == parallel_table.cells;
    std::printf("tables identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
