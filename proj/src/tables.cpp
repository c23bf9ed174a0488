#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tvtest/errors.hpp"
#include "tvtest/montecarlo.hpp"

namespace tvtest {

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt_rate_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::vector<std::size_t> kPresetSampleSizes = {100, 200, 400, 1000};
const std::vector<Method> kAllFive = {Method::ma, Method::mwb, Method::va, Method::vb,
                                      Method::vwb};

struct ParamPair {
    double first;
    double second;
};
const std::vector<ParamPair> kShiftPairs = {{0.0, 0.3}, {0.0, 0.6}, {0.5, 0.3}, {1.0, 0.3}};
const std::vector<double> kGammas = {0.01, 0.1};

ExperimentConfig preset_base() {
    ExperimentConfig cfg;
    cfg.sample_sizes = kPresetSampleSizes;
    cfg.tests = kAllFive;
    cfg.replications = 10000;
    cfg.nominal_level = 0.05;
    cfg.bootstrap.iterations = 1000;
    cfg.master_seed = 1;
    return cfg;
}

ExperimentConfig preset_table1() {
    ExperimentConfig cfg = preset_base();
    for (double beta0 : {0.3, 0.9}) {
        DgpSpec spec;
        spec.kind = DgpKind::ar_homoskedastic;
        spec.mean.alpha0 = 1.0;
        spec.mean.beta0 = beta0;
        cfg.dgp_grid.push_back({"beta0=" + fmt_num(beta0), spec, false});
    }
    return cfg;
}

ExperimentConfig preset_table2() {
    ExperimentConfig cfg = preset_base();
    for (double gamma : kGammas) {
        for (const ParamPair& p : kShiftPairs) {
            DgpSpec spec;
            spec.kind = DgpKind::tv_mean;
            spec.mean = {1.0, 0.3, p.first, p.second, {gamma, 1.0}};
            cfg.dgp_grid.push_back({"alpha1=" + fmt_num(p.first) + " beta1=" +
                                        fmt_num(p.second) + " gamma=" + fmt_num(gamma),
                                    spec, true});
        }
    }
    return cfg;
}

ExperimentConfig preset_table3() {
    ExperimentConfig cfg = preset_base();
    for (double b0 : {0.3, 0.6, 0.9}) {
        DgpSpec spec;
        spec.kind = DgpKind::ar_arch;
        spec.mean.alpha0 = 1.0;
        spec.mean.beta0 = 0.3;
        spec.variance = VarianceParams{1.0, b0, 0.0, 0.0, {}};
        cfg.dgp_grid.push_back({"b0=" + fmt_num(b0), spec, false});
    }
    return cfg;
}

ExperimentConfig preset_table4() {
    ExperimentConfig cfg = preset_base();
    for (double gamma : kGammas) {
        for (const ParamPair& p : kShiftPairs) {
            DgpSpec spec;
            spec.kind = DgpKind::tv_arch;
            spec.mean.alpha0 = 1.0;
            spec.mean.beta0 = 0.3;
            spec.variance = VarianceParams{1.0, 0.3, p.first, p.second, {gamma, 1.0}};
            cfg.dgp_grid.push_back({"a1=" + fmt_num(p.first) + " b1=" + fmt_num(p.second) +
                                        " gamma=" + fmt_num(gamma),
                                    spec, true});
        }
    }
    return cfg;
}

/// Row/column plan for a rendering: method columns, T rows grouped by
/// parameter set, optionally split into blocks (one per smoothness value).
struct LayoutSpec {
    std::vector<Method> methods;
    std::vector<std::size_t> sample_sizes;
    std::vector<std::string> block_titles;               // {""} when unsplit
    std::vector<std::string> group_titles;               // one per parameter set
    std::vector<std::vector<std::string>> cell_labels;   // [group][block] -> dgp label
};

LayoutSpec shifted_layout(const char* first_name, const char* second_name) {
    LayoutSpec layout;
    layout.methods = kAllFive;
    layout.sample_sizes = kPresetSampleSizes;
    for (double gamma : kGammas) {
        layout.block_titles.push_back("gamma=" + fmt_num(gamma));
    }
    for (const ParamPair& p : kShiftPairs) {
        layout.group_titles.push_back(std::string(first_name) + "=" + fmt_num(p.first) + " " +
                                      second_name + "=" + fmt_num(p.second));
        std::vector<std::string> labels;
        for (double gamma : kGammas) {
            labels.push_back(std::string(first_name) + "=" + fmt_num(p.first) + " " +
                             second_name + "=" + fmt_num(p.second) + " gamma=" + fmt_num(gamma));
        }
        layout.cell_labels.push_back(std::move(labels));
    }
    return layout;
}

LayoutSpec single_block_layout(const std::vector<std::string>& labels) {
    LayoutSpec layout;
    layout.methods = kAllFive;
    layout.sample_sizes = kPresetSampleSizes;
    layout.block_titles = {""};
    for (const std::string& label : labels) {
        layout.group_titles.push_back(label);
        layout.cell_labels.push_back({label});
    }
    return layout;
}

LayoutSpec custom_layout(const RejectionTable& table) {
    LayoutSpec layout;
    layout.block_titles = {""};
    std::set<std::size_t> sizes;
    std::set<Method> methods;
    std::vector<std::string> labels;
    for (const auto& [key, _] : table.cells) {
        sizes.insert(key.sample_size);
        methods.insert(key.method);
        if (std::find(labels.begin(), labels.end(), key.dgp_label) == labels.end()) {
            labels.push_back(key.dgp_label);
        }
    }
    layout.sample_sizes.assign(sizes.begin(), sizes.end());
    layout.methods.assign(methods.begin(), methods.end());
    for (const std::string& label : labels) {
        layout.group_titles.push_back(label);
        layout.cell_labels.push_back({label});
    }
    return layout;
}

LayoutSpec layout_spec(TableLayout layout, const RejectionTable& table) {
    switch (layout) {
        case TableLayout::table1:
            return single_block_layout({"beta0=0.3", "beta0=0.9"});
        case TableLayout::table2:
            return shifted_layout("alpha1", "beta1");
        case TableLayout::table3:
            return single_block_layout({"b0=0.3", "b0=0.6", "b0=0.9"});
        case TableLayout::table4:
            return shifted_layout("a1", "b1");
        case TableLayout::custom:
            return custom_layout(table);
    }
    throw InvalidInputError("summarize: unknown layout");
}

}  // namespace

ExperimentConfig table_preset(int which) {
    switch (which) {
        case 1: return preset_table1();
        case 2: return preset_table2();
        case 3: return preset_table3();
        case 4: return preset_table4();
        default: throw InvalidInputError("table preset must be 1, 2, 3, or 4");
    }
}

TableLayout layout_for_preset(int which) {
    switch (which) {
        case 1: return TableLayout::table1;
        case 2: return TableLayout::table2;
        case 3: return TableLayout::table3;
        case 4: return TableLayout::table4;
        default: throw InvalidInputError("table preset must be 1, 2, 3, or 4");
    }
}

RenderedTable summarize(const RejectionTable& table, TableLayout layout) {
    const LayoutSpec spec = layout_spec(layout, table);

    // Complain about every missing cell at once.
    std::vector<std::string> missing;
    for (std::size_t b = 0; b < spec.block_titles.size(); ++b) {
        for (std::size_t g = 0; g < spec.group_titles.size(); ++g) {
            for (std::size_t T : spec.sample_sizes) {
                for (Method m : spec.methods) {
                    if (!table.cells.count({spec.cell_labels[g][b], T, m})) {
                        missing.push_back(spec.cell_labels[g][b] + "|T=" + std::to_string(T) +
                                          "|" + std::string(method_name(m)));
                    }
                }
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "summarize: table is missing cells:";
        for (const std::string& k : missing) {
            msg += " " + k + ";";
        }
        throw IncompleteTableError(msg);
    }

    std::ostringstream csv;
    csv << "dgp,T";
    for (Method m : spec.methods) {
        csv << ',' << method_name(m);
    }
    csv << ",replications\n";
    for (std::size_t b = 0; b < spec.block_titles.size(); ++b) {
        for (std::size_t g = 0; g < spec.group_titles.size(); ++g) {
            for (std::size_t T : spec.sample_sizes) {
                csv << spec.cell_labels[g][b] << ',' << T;
                int reps = 0;
                for (Method m : spec.methods) {
                    const CellStats& cell = table.cells.at({spec.cell_labels[g][b], T, m});
                    csv << ',' << fmt_rate_full(cell.rejection_rate);
                    reps = cell.replications_used;
                }
                csv << ',' << reps << '\n';
            }
        }
    }

    std::ostringstream text;
    std::size_t head_width = 10;
    for (const std::string& s : spec.group_titles) {
        head_width = std::max(head_width, s.size());
    }
    for (const std::string& s : spec.block_titles) {
        head_width = std::max(head_width, s.size());
    }
    head_width += 2;

    auto pad = [&](const std::string& s) {
        std::string out = s;
        out.resize(head_width, ' ');
        return out;
    };

    text << pad("");
    for (Method m : spec.methods) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%8s", std::string(method_name(m)).c_str());
        text << buf;
    }
    text << '\n';
    for (std::size_t b = 0; b < spec.block_titles.size(); ++b) {
        if (!spec.block_titles[b].empty()) {
            text << spec.block_titles[b] << '\n';
        }
        for (std::size_t g = 0; g < spec.group_titles.size(); ++g) {
            text << spec.group_titles[g] << '\n';
            for (std::size_t T : spec.sample_sizes) {
                text << pad("  T=" + std::to_string(T));
                for (Method m : spec.methods) {
                    char buf[16];
                    std::snprintf(
                        buf, sizeof(buf), "%8.3f",
                        table.cells.at({spec.cell_labels[g][b], T, m}).rejection_rate);
                    text << buf;
                }
                text << '\n';
            }
        }
    }

    return {csv.str(), text.str()};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

}  // namespace

RejectionTable parse_table_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidInputError("parse_table_csv: empty input");
    }
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header.front() != "dgp" || header[1] != "T" ||
        header.back() != "replications") {
        throw InvalidInputError("parse_table_csv: unexpected header");
    }
    std::vector<Method> methods;
    for (std::size_t j = 2; j + 1 < header.size(); ++j) {
        const auto m = method_from_string(header[j]);
        if (!m) {
            throw InvalidInputError("parse_table_csv: unknown method column '" + header[j] + "'");
        }
        methods.push_back(*m);
    }

    RejectionTable table;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw InvalidInputError("parse_table_csv: row width does not match header");
        }
        const std::size_t T = std::stoul(fields[1]);
        const int reps = std::stoi(fields.back());
        for (std::size_t j = 0; j < methods.size(); ++j) {
            const double rate = std::stod(fields[2 + j]);
            table.cells[{fields[0], T, methods[j]}] = {rate, reps,
                                                       std::sqrt(rate * (1.0 - rate) / reps)};
        }
    }
    return table;
}

ExperimentConfig config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("config: invalid JSON: ") + e.what());
    }

    try {
        ExperimentConfig cfg;
        cfg.replications = j.value("replications", 10000);
        cfg.nominal_level = j.value("nominal_level", 0.05);
        cfg.master_seed = j.value("master_seed", std::uint64_t{0});
        for (const auto& t : j.value("sample_sizes", std::vector<std::size_t>{})) {
            cfg.sample_sizes.push_back(t);
        }
        const std::vector<std::string> default_tests = {"ma", "mwb", "va", "vb", "vwb"};
        for (const std::string& name : j.value("tests", default_tests)) {
            const auto m = method_from_string(name);
            if (!m) {
                throw InvalidInputError("config: unknown test '" + name + "'");
            }
            cfg.tests.push_back(*m);
        }
        if (j.contains("bootstrap")) {
            const auto& b = j.at("bootstrap");
            cfg.bootstrap.iterations = b.value("iterations", 1000);
            cfg.bootstrap.seed = b.value("seed", std::uint64_t{0});
            const std::string mult = b.value("multiplier", "standard_normal");
            if (mult == "standard_normal") {
                cfg.bootstrap.multiplier = Multiplier::standard_normal;
            } else if (mult == "rademacher") {
                cfg.bootstrap.multiplier = Multiplier::rademacher;
            } else {
                throw InvalidInputError("config: unknown multiplier '" + mult + "'");
            }
        }

        int index = 0;
        for (const auto& d : j.value("dgps", nlohmann::json::array())) {
            DgpGridEntry entry;
            const std::string kind = d.value("kind", "");
            DgpSpec& spec = entry.spec;
            if (kind == "ar_homoskedastic") {
                spec.kind = DgpKind::ar_homoskedastic;
            } else if (kind == "tv_mean") {
                spec.kind = DgpKind::tv_mean;
            } else if (kind == "ar_arch") {
                spec.kind = DgpKind::ar_arch;
            } else if (kind == "tv_arch") {
                spec.kind = DgpKind::tv_arch;
            } else {
                throw InvalidInputError("config: unknown dgp kind '" + kind + "'");
            }
            spec.mean.alpha0 = d.value("alpha0", 0.0);
            spec.mean.beta0 = d.value("beta0", 0.0);
            spec.mean.alpha1 = d.value("alpha1", 0.0);
            spec.mean.beta1 = d.value("beta1", 0.0);
            spec.burn_in = d.value("burn_in", std::size_t{100});
            const double gamma = d.value("gamma", 0.0);
            entry.center_threshold = !d.contains("c");
            const double c = d.value("c", 1.0);
            if (spec.kind == DgpKind::tv_mean) {
                spec.mean.transition = {gamma, c};
            }
            if (spec.kind == DgpKind::ar_arch || spec.kind == DgpKind::tv_arch) {
                VarianceParams v;
                v.a0 = d.value("a0", 1.0);
                v.b0 = d.value("b0", 0.0);
                v.a1 = d.value("a1", 0.0);
                v.b1 = d.value("b1", 0.0);
                if (spec.kind == DgpKind::tv_arch) {
                    v.transition = {gamma, c};
                }
                spec.variance = v;
            }
            entry.label = d.value("label", kind + "#" + std::to_string(index));
            cfg.dgp_grid.push_back(std::move(entry));
            ++index;
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("config: ") + e.what());
    }
}

}  // namespace tvtest
