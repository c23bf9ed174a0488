#include "tvtest/montecarlo.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "tvtest/errors.hpp"
#include "tvtest/rng.hpp"

namespace tvtest {

void validate(const ExperimentConfig& cfg) {
    if (cfg.dgp_grid.empty()) {
        throw InvalidInputError("experiment: dgp grid is empty");
    }
    if (cfg.sample_sizes.empty()) {
        throw InvalidInputError("experiment: no sample sizes");
    }
    if (cfg.tests.empty()) {
        throw InvalidInputError("experiment: no tests requested");
    }
    if (cfg.replications < 100) {
        throw InvalidInputError("experiment: replications must be >= 100");
    }
    if (!(cfg.nominal_level > 0.0 && cfg.nominal_level <= 1.0)) {
        throw InvalidInputError("experiment: nominal level must lie in (0, 1]");
    }
    for (std::size_t i = 0; i < cfg.dgp_grid.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.dgp_grid.size(); ++j) {
            if (cfg.dgp_grid[i].label == cfg.dgp_grid[j].label) {
                throw InvalidInputError("experiment: duplicate dgp label '" +
                                        cfg.dgp_grid[i].label + "'");
            }
        }
    }
}

TestRunner default_test_runner(const ExperimentConfig& cfg) {
    BootstrapConfig boot = cfg.bootstrap;
    return [boot](Method m, const TimeSeries& series, std::uint64_t boot_seed) {
        BootstrapConfig b = boot;
        b.seed = boot_seed;
        return run_test(m, series.values, b);
    };
}

namespace {

DgpSpec instantiate(const DgpGridEntry& entry, std::size_t T) {
    DgpSpec spec = entry.spec;
    spec.sample_size = T;
    if (entry.center_threshold) {
        const double c = static_cast<double>(T) / 2.0;
        if (spec.kind == DgpKind::tv_mean) {
            spec.mean.transition.c = c;
        } else if (spec.kind == DgpKind::tv_arch && spec.variance) {
            spec.variance->transition.c = c;
        }
    }
    return spec;
}

constexpr int kMaxFreshSeeds = 3;

/// One replication: simulate, run every requested test on that same series,
/// return per-test rejection flags. A failing attempt (singular design,
/// bootstrap exhaustion, ...) is retried with a fresh child seed up to
/// kMaxFreshSeeds times; the retry index enters every derived stream.
std::vector<unsigned char> replicate_once(const ExperimentConfig& cfg, const TestRunner& runner,
                                          std::size_t dgp_index, std::size_t T, int replication) {
    const DgpGridEntry& entry = cfg.dgp_grid[dgp_index];
    std::string last_error;
    for (int attempt = 0; attempt <= kMaxFreshSeeds; ++attempt) {
        try {
            const std::uint64_t sim_seed = derive_seed(
                cfg.master_seed,
                {dgp_index, static_cast<std::uint64_t>(T), static_cast<std::uint64_t>(replication),
                 static_cast<std::uint64_t>(attempt), seedtag::simulation});
            RngStream stream(sim_seed);
            const TimeSeries series = simulate(instantiate(entry, T), stream);

            std::vector<unsigned char> rejects(cfg.tests.size(), 0);
            for (std::size_t i = 0; i < cfg.tests.size(); ++i) {
                const std::uint64_t boot_seed = derive_seed(
                    cfg.master_seed, {dgp_index, static_cast<std::uint64_t>(T),
                                      static_cast<std::uint64_t>(replication),
                                      static_cast<std::uint64_t>(attempt), seedtag::bootstrap,
                                      static_cast<std::uint64_t>(i), cfg.bootstrap.seed});
                const TestOutcome outcome = runner(cfg.tests[i], series, boot_seed);
                rejects[i] = outcome.p_value < cfg.nominal_level ? 1 : 0;
            }
            return rejects;
        } catch (const InvalidInputError&) {
            throw;  // a bad configuration never improves with a new seed
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    throw ExperimentError("replication " + std::to_string(replication) + " of cell (" +
                          entry.label + ", T=" + std::to_string(T) + ") failed after " +
                          std::to_string(kMaxFreshSeeds) + " fresh seeds: " + last_error);
}

RejectionTable table_from_counts(const ExperimentConfig& cfg, const std::vector<long>& counts) {
    RejectionTable table;
    const std::size_t n_tests = cfg.tests.size();
    const int reps = cfg.replications;
    std::size_t cell = 0;
    for (const DgpGridEntry& entry : cfg.dgp_grid) {
        for (std::size_t T : cfg.sample_sizes) {
            for (std::size_t i = 0; i < n_tests; ++i) {
                const double rate =
                    static_cast<double>(counts[cell * n_tests + i]) / static_cast<double>(reps);
                table.cells[{entry.label, T, cfg.tests[i]}] = {
                    rate, reps, std::sqrt(rate * (1.0 - rate) / reps)};
            }
            ++cell;
        }
    }
    return table;
}

}  // namespace

RejectionTable run_experiment_with(const ExperimentConfig& cfg, const TestRunner& runner,
                                   int threads) {
    validate(cfg);
    const std::size_t n_t = cfg.sample_sizes.size();
    const std::size_t n_tests = cfg.tests.size();
    const long n_cells = static_cast<long>(cfg.dgp_grid.size() * n_t);
    const long total = n_cells * cfg.replications;

    std::vector<long> counts(static_cast<std::size_t>(n_cells) * n_tests, 0);
    std::atomic<bool> failed{false};
    std::string error_message;

    const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(n_threads)
    {
        std::vector<long> local(counts.size(), 0);
#pragma omp for schedule(dynamic, 4)
        for (long w = 0; w < total; ++w) {
            if (failed.load(std::memory_order_relaxed)) {
                continue;
            }
            const long cell = w / cfg.replications;
            const int r = static_cast<int>(w % cfg.replications);
            const std::size_t d = static_cast<std::size_t>(cell) / n_t;
            const std::size_t T = cfg.sample_sizes[static_cast<std::size_t>(cell) % n_t];
            try {
                const auto rejects = replicate_once(cfg, runner, d, T, r);
                for (std::size_t i = 0; i < n_tests; ++i) {
                    local[static_cast<std::size_t>(cell) * n_tests + i] += rejects[i];
                }
            } catch (const std::exception& e) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true)) {
#pragma omp critical(tvtest_experiment_error)
                    error_message = e.what();
                }
            }
        }
#pragma omp critical(tvtest_experiment_reduce)
        {
            for (std::size_t j = 0; j < counts.size(); ++j) {
                counts[j] += local[j];
            }
        }
    }

    if (failed.load()) {
        throw ExperimentError(error_message);
    }
    return table_from_counts(cfg, counts);
}

RejectionTable run_experiment(const ExperimentConfig& cfg, int threads) {
    return run_experiment_with(cfg, default_test_runner(cfg), threads);
}

RejectionTable run_experiment_reference_with(const ExperimentConfig& cfg,
                                             const TestRunner& runner) {
    validate(cfg);
    const std::size_t n_tests = cfg.tests.size();
    std::vector<long> counts(cfg.dgp_grid.size() * cfg.sample_sizes.size() * n_tests, 0);
    std::size_t cell = 0;
    for (std::size_t d = 0; d < cfg.dgp_grid.size(); ++d) {
        for (std::size_t T : cfg.sample_sizes) {
            for (int r = 0; r < cfg.replications; ++r) {
                const auto rejects = replicate_once(cfg, runner, d, T, r);
                for (std::size_t i = 0; i < n_tests; ++i) {
                    counts[cell * n_tests + i] += rejects[i];
                }
            }
            ++cell;
        }
    }
    return table_from_counts(cfg, counts);
}

RejectionTable run_experiment_reference(const ExperimentConfig& cfg) {
    return run_experiment_reference_with(cfg, default_test_runner(cfg));
}

}  // namespace tvtest
