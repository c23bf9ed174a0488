#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tvtest/dgp.hpp"
#include "tvtest/linearity_tests.hpp"

namespace tvtest {

/// One parameter set of an experiment grid. The spec is a template:
/// sample_size is filled in per requested T, and when center_threshold is
/// set the active transition threshold becomes T/2 at instantiation.
struct DgpGridEntry {
    std::string label;
    DgpSpec spec;
    bool center_threshold = false;
};

struct ExperimentConfig {
    std::vector<DgpGridEntry> dgp_grid;
    std::vector<std::size_t> sample_sizes;
    std::vector<Method> tests;
    int replications = 10000;
    double nominal_level = 0.05;
    BootstrapConfig bootstrap;
    std::uint64_t master_seed = 0;
};

/// Throws InvalidInputError on an unusable configuration.
void validate(const ExperimentConfig& cfg);

struct CellKey {
    std::string dgp_label;
    std::size_t sample_size = 0;
    Method method{};
    auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
    double rejection_rate = 0.0;
    int replications_used = 0;
    double monte_carlo_se = 0.0;  // sqrt(r (1-r) / R)
    bool operator==(const CellStats&) const = default;
};

struct RejectionTable {
    std::map<CellKey, CellStats> cells;
};

/// Test evaluation seam: (method, simulated series, derived bootstrap seed)
/// -> outcome. The default runner dispatches to the library tests;
/// self-tests substitute synthetic runners.
using TestRunner =
    std::function<TestOutcome(Method, const TimeSeries&, std::uint64_t boot_seed)>;

TestRunner default_test_runner(const ExperimentConfig& cfg);

/// OpenMP-parallel experiment kernel. Every replication derives its RNG
/// streams from (master_seed, dgp index, T, replication index), all
/// requested tests see the same simulated series, and rejection counts are
/// an associative reduction, so the result is bit-identical across runs and
/// across worker counts. threads = 0 uses the OpenMP default.
///
/// A replication that keeps erroring after 3 fresh child seeds aborts the
/// experiment naming the cell.
RejectionTable run_experiment(const ExperimentConfig& cfg, int threads = 0);
RejectionTable run_experiment_with(const ExperimentConfig& cfg, const TestRunner& runner,
                                   int threads = 0);

/// Plain-loop serial implementation, kept as the reference the parallel
/// kernel is tested against.
RejectionTable run_experiment_reference(const ExperimentConfig& cfg);
RejectionTable run_experiment_reference_with(const ExperimentConfig& cfg,
                                             const TestRunner& runner);

enum class TableLayout { table1, table2, table3, table4, custom };

struct RenderedTable {
    std::string csv;   // wide layout, methods as columns, full-precision rates
    std::string text;  // aligned rendering, three decimals
};

/// Renders a table in the requested layout (methods as columns, parameter
/// set and T as rows; the time-varying layouts split into blocks by the
/// smoothness parameter). Throws IncompleteTableError listing the missing
/// keys when the layout requires cells the table lacks.
RenderedTable summarize(const RejectionTable& table, TableLayout layout);

/// Inverse of the CSV rendering; summarize().csv parses back to an
/// identical table.
RejectionTable parse_table_csv(const std::string& csv);

/// Built-in experiment grids 1-4 at full scale (10,000 replications, 1,000
/// bootstrap iterations, T in {100, 200, 400, 1000}, all five tests):
///   1: AR(1) null, homoskedastic errors
///   2: smooth-transition mean, homoskedastic errors
///   3: AR(1) mean, constant-parameter ARCH errors
///   4: AR(1) mean, smooth-transition ARCH errors
ExperimentConfig table_preset(int which);

/// Layout matching a preset number.
TableLayout layout_for_preset(int which);

/// Parses an experiment configuration from JSON text. See the README for
/// the schema.
ExperimentConfig config_from_json(const std::string& json_text);

}  // namespace tvtest
