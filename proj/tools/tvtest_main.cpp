// Command-line front end: simulate series, run a single test on a CSV,
// replicate full experiment grids, and emit transition-function figure data.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvtest/dgp.hpp"
#include "tvtest/errors.hpp"
#include "tvtest/figures.hpp"
#include "tvtest/linearity_tests.hpp"
#include "tvtest/montecarlo.hpp"
#include "tvtest/rng.hpp"

namespace {

tvtest::DgpKind kind_from_string(const std::string& s) {
    if (s == "ar_homoskedastic") return tvtest::DgpKind::ar_homoskedastic;
    if (s == "tv_mean") return tvtest::DgpKind::tv_mean;
    if (s == "ar_arch") return tvtest::DgpKind::ar_arch;
    if (s == "tv_arch") return tvtest::DgpKind::tv_arch;
    throw tvtest::InvalidInputError("unknown dgp kind '" + s + "'");
}

/// Accepts a one-column series or rows with a leading time index; a
/// non-numeric first row is treated as a header.
std::vector<double> parse_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(field);
                field.clear();
            } else if (c != '\r') {
                field += c;
            }
        }
        fields.push_back(field);
        const std::string& cell = fields.size() >= 2 ? fields[1] : fields[0];
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) {
                throw std::invalid_argument(cell);
            }
            values.push_back(v);
        } catch (const std::exception&) {
            if (!first) {
                throw tvtest::InvalidInputError("input: non-numeric value '" + cell + "'");
            }
        }
        first = false;
    }
    return values;
}

struct SimulateArgs {
    std::string kind = "ar_homoskedastic";
    std::size_t T = 0;
    double alpha0 = 1.0, beta0 = 0.3, alpha1 = 0.0, beta1 = 0.0;
    double a0 = 1.0, b0 = 0.0, a1 = 0.0, b1 = 0.0;
    double gamma = 0.0;
    double c = -1.0;  // < 0: default to T/2
    std::size_t burn_in = 100;
    std::uint64_t seed = 0;
    bool latent = false;
};

int run_simulate(const SimulateArgs& args) {
    tvtest::DgpSpec spec;
    spec.kind = kind_from_string(args.kind);
    spec.sample_size = args.T;
    spec.burn_in = args.burn_in;
    spec.mean = {args.alpha0, args.beta0, args.alpha1, args.beta1, {}};
    const double c = args.c > 0.0 ? args.c : static_cast<double>(args.T) / 2.0;
    if (spec.kind == tvtest::DgpKind::tv_mean) {
        spec.mean.transition = {args.gamma, c};
    }
    if (spec.kind == tvtest::DgpKind::ar_arch || spec.kind == tvtest::DgpKind::tv_arch) {
        tvtest::VarianceParams v{args.a0, args.b0, args.a1, args.b1, {}};
        if (spec.kind == tvtest::DgpKind::tv_arch) {
            v.transition = {args.gamma, c};
        }
        spec.variance = v;
    }

    tvtest::RngStream stream(args.seed);
    const tvtest::TimeSeries series = tvtest::simulate(spec, stream, args.latent);

    std::cout << (args.latent ? "t,y,h2\n" : "t,y\n");
    char buf[96];
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (args.latent) {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i + 1, series.values[i],
                          (*series.latent_h2)[i]);
        } else {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, series.values[i]);
        }
        std::cout << buf;
    }
    return 0;
}

int run_single_test(const std::string& input, const std::string& method_name, int boot_iters,
                    std::uint64_t seed) {
    const auto method = tvtest::method_from_string(method_name);
    if (!method) {
        throw tvtest::InvalidInputError("unknown method '" + method_name + "'");
    }
    std::vector<double> y;
    if (input == "-") {
        y = parse_series_csv(std::cin);
    } else {
        std::ifstream in(input);
        if (!in) {
            throw tvtest::InvalidInputError("cannot open input file '" + input + "'");
        }
        y = parse_series_csv(in);
    }

    tvtest::BootstrapConfig cfg;
    cfg.iterations = boot_iters;
    cfg.seed = seed;
    const tvtest::TestOutcome out = tvtest::run_test(*method, y, cfg);

    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g\n",
                  std::string(tvtest::method_name(out.method)).c_str(), out.statistic,
                  out.p_value);
    std::cout << "method,statistic,p_value\n" << buf;
    return 0;
}

struct ExperimentArgs {
    std::string table;
    std::string config_path;
    int replications = 0;
    int boot_iters = 0;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out_dir = ".";
};

void apply_overrides(tvtest::ExperimentConfig& cfg, const ExperimentArgs& args) {
    if (args.replications > 0) {
        cfg.replications = args.replications;
    }
    if (args.boot_iters > 0) {
        cfg.bootstrap.iterations = args.boot_iters;
    }
    if (args.seed) {
        cfg.master_seed = *args.seed;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw tvtest::InvalidInputError("cannot write '" + path.string() + "'");
    }
    out << content;
}

int run_experiment_cmd(const ExperimentArgs& args) {
    std::filesystem::create_directories(args.out_dir);

    std::vector<int> presets;
    if (!args.table.empty()) {
        if (args.table == "all") {
            presets = {1, 2, 3, 4};
        } else {
            presets = {std::stoi(args.table)};
        }
    }

    if (!presets.empty()) {
        for (int k : presets) {
            tvtest::ExperimentConfig cfg = tvtest::table_preset(k);
            apply_overrides(cfg, args);
            const tvtest::RejectionTable table = tvtest::run_experiment(cfg, args.threads);
            const tvtest::RenderedTable rendered =
                tvtest::summarize(table, tvtest::layout_for_preset(k));
            const std::filesystem::path base =
                std::filesystem::path(args.out_dir) / ("table" + std::to_string(k));
            write_file(base.string() + ".csv", rendered.csv);
            write_file(base.string() + ".txt", rendered.text);
            std::cout << "wrote " << base.string() << ".csv and .txt\n" << rendered.text;
        }
        return 0;
    }

    std::ifstream in(args.config_path);
    if (!in) {
        throw tvtest::InvalidInputError("cannot open config '" + args.config_path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    tvtest::ExperimentConfig cfg = tvtest::config_from_json(buffer.str());
    apply_overrides(cfg, args);
    const tvtest::RejectionTable table = tvtest::run_experiment(cfg, args.threads);
    const tvtest::RenderedTable rendered = tvtest::summarize(table, tvtest::TableLayout::custom);
    const std::filesystem::path base = std::filesystem::path(args.out_dir) / "custom";
    write_file(base.string() + ".csv", rendered.csv);
    write_file(base.string() + ".txt", rendered.text);
    std::cout << "wrote " << base.string() << ".csv and .txt\n" << rendered.text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth-transition time-varying mean/variance models: simulation, linearity "
                 "tests, and Monte Carlo experiments"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "simulate a series, CSV to stdout");
    simulate->add_option("--kind", sim.kind,
                         "ar_homoskedastic | tv_mean | ar_arch | tv_arch");
    simulate->add_option("-T,--T", sim.T, "sample size")->required();
    simulate->add_option("--alpha0", sim.alpha0, "mean constant");
    simulate->add_option("--beta0", sim.beta0, "AR coefficient");
    simulate->add_option("--alpha1", sim.alpha1, "time-varying constant shift");
    simulate->add_option("--beta1", sim.beta1, "time-varying AR shift");
    simulate->add_option("--a0", sim.a0, "ARCH constant");
    simulate->add_option("--b0", sim.b0, "ARCH slope");
    simulate->add_option("--a1", sim.a1, "time-varying ARCH constant shift");
    simulate->add_option("--b1", sim.b1, "time-varying ARCH slope shift");
    simulate->add_option("--gamma", sim.gamma, "transition smoothness");
    simulate->add_option("--c", sim.c, "transition threshold (default T/2)");
    simulate->add_option("--burn-in", sim.burn_in, "discarded leading samples");
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_flag("--latent", sim.latent, "also emit the conditional variance h2");

    std::string test_input = "-";
    std::string test_method;
    int test_boot = 1000;
    std::uint64_t test_seed = 0;
    CLI::App* test = app.add_subcommand("test", "run one test on a CSV series");
    test->add_option("--input", test_input, "CSV file, '-' for stdin");
    test->add_option("--method", test_method, "ma | mwb | va | vb | vwb | tr2")->required();
    test->add_option("--boot-iters", test_boot, "bootstrap iterations");
    test->add_option("--seed", test_seed, "bootstrap RNG seed");

    ExperimentArgs exp;
    CLI::App* experiment =
        app.add_subcommand("experiment", "run an experiment grid, write CSV and text tables");
    CLI::Option* table_opt =
        experiment->add_option("--table", exp.table, "preset grid: 1 | 2 | 3 | 4 | all")
            ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
    CLI::Option* config_opt =
        experiment->add_option("--config", exp.config_path, "JSON experiment configuration");
    table_opt->excludes(config_opt);
    experiment->add_option("--replications", exp.replications, "override replication count");
    experiment->add_option("--boot-iters", exp.boot_iters, "override bootstrap iterations");
    std::uint64_t exp_seed = 0;
    CLI::Option* seed_opt = experiment->add_option("--seed", exp_seed, "master seed override");
    experiment->add_option("--threads", exp.threads, "worker threads (0 = OpenMP default)");
    experiment->add_option("--out", exp.out_dir, "output directory");

    std::size_t fig_T = 0;
    std::vector<double> fig_gammas;
    double fig_c = -1.0;
    CLI::App* figure =
        app.add_subcommand("figure", "emit transition-function curves, CSV to stdout");
    figure->add_option("-T,--T", fig_T, "grid length")->required();
    figure->add_option("--gamma", fig_gammas, "smoothness value (repeatable)")->required();
    figure->add_option("--c", fig_c, "threshold (default T/2)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(sim);
        }
        if (test->parsed()) {
            return run_single_test(test_input, test_method, test_boot, test_seed);
        }
        if (experiment->parsed()) {
            if (exp.table.empty() && exp.config_path.empty()) {
                throw tvtest::InvalidInputError("experiment: need --table or --config");
            }
            if (seed_opt->count() > 0) {
                exp.seed = exp_seed;
            }
            return run_experiment_cmd(exp);
        }
        if (figure->parsed()) {
            const double c = fig_c > 0.0 ? fig_c : static_cast<double>(fig_T) / 2.0;
            std::cout << tvtest::emit_figure_data(fig_T, fig_gammas, c);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
