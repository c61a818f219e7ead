// icspec: command-line front end for integrated copula spectral analysis.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "icspec/competitors.hpp"
#include "icspec/core.hpp"
#include "icspec/experiment.hpp"
#include "icspec/inference.hpp"
#include "icspec/io.hpp"
#include "icspec/models.hpp"
#include "icspec/parallel.hpp"
#include "icspec/random.hpp"
#include "icspec/ranks.hpp"
#include "icspec/spectrum.hpp"
#include "icspec/subsample.hpp"

namespace {

using namespace icspec;

constexpr std::string_view kVersion = "1.0.0";
constexpr int kUsageError = 1;
constexpr int kDataError = 2;

const std::vector<std::string> kCommands{"estimate",      "band",       "test-tr", "test-eq", "simulate",
                                         "truth-surface", "experiment", "catalog"};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string command;
    std::string input;
    std::string output;
    std::string model = "M0";
    std::string n;
    std::size_t b = 0;
    std::int64_t d = 32;
    double alpha = 0.05;
    std::string weight = "s4";
    bool fpc = true;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::size_t reps = 0;
    std::size_t replication = 0;
    std::string quantiles;
    std::string part = "re";
    double tau1 = 0.5;
    double tau2 = 0.5;
    bool uniform = false;
    std::string kind = "size-power-tr";
    std::string truth;
    std::size_t truth_n = 2048;
    std::size_t truth_reps = 5000;
    std::string plot_data;
    std::string summary;
    bool tr2 = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::size_t parse_size(const std::string& text) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw UsageError("'" + text + "' is not a non-negative integer");
    }
    if (used != text.size() || text.front() == '-') throw UsageError("'" + text + "' is not a non-negative integer");
    return static_cast<std::size_t>(value);
}

// "8" is the grid k/8, "16:2:4" is k/16 for k = 2..4, anything else a comma list of levels.
QuantileGrid parse_quantiles(const std::string& text) {
    try {
        if (text.find(':') != std::string::npos) {
            std::vector<std::string> parts;
            std::stringstream in(text);
            for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
            if (parts.size() != 3) throw UsageError("quantile range must look like DEN:FIRST:LAST");
            return QuantileGrid::fractions(static_cast<int>(parse_size(parts[0])), static_cast<int>(parse_size(parts[1])),
                                           static_cast<int>(parse_size(parts[2])));
        }
        if (text.find_first_of(".,") == std::string::npos) return QuantileGrid::uniform(static_cast<int>(parse_size(text)));
        std::vector<double> levels;
        for (const auto& item : split_list(text)) levels.push_back(std::stod(item));
        return QuantileGrid(levels);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("bad --quantiles '" + text + "': " + e.what());
    }
}

std::string join_levels(const QuantileGrid& grid) {
    std::string text;
    for (double tau : grid.levels()) {
        if (!text.empty()) text += ',';
        text += format_double(tau);
    }
    return text;
}

QuantileGrid default_quantiles(const Options& opt) {
    if (!opt.quantiles.empty()) return parse_quantiles(opt.quantiles);
    const bool eq = opt.command == "test-eq" || (opt.command == "experiment" && opt.kind == "size-power-eq");
    if (eq) return QuantileGrid::fractions(16, 2, 4);
    if (opt.command == "experiment" && opt.kind == "coverage-uniform") return QuantileGrid::uniform(16);
    return QuantileGrid::uniform(8);
}

// Reads --config FILE and splices its settings in front of the remaining arguments.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> rest;
    std::optional<std::string> config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file");
            config = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!config) return rest;

    Provenance settings;
    try {
        settings = read_settings(*config);
    } catch (const std::exception& e) {
        throw UsageError(std::string("cannot read config: ") + e.what());
    }
    std::vector<std::string> spliced;
    std::string command;
    for (const auto& [key, value] : settings) {
        if (key == "command") {
            command = value;
        } else if (key == "rng" || key == "version" || key == "critical" || key == "truth-model") {
            continue;
        } else if (key == "fpc" || key == "tr2" || key == "uniform") {
            const bool on = value == "true" || value == "1" || value == "on";
            if (key == "fpc") {
                spliced.push_back(on ? "--fpc" : "--no-fpc");
            } else if (on) {
                spliced.push_back("--" + key);
            }
        } else {
            spliced.push_back("--" + key);
            spliced.push_back(value);
        }
    }
    if (!rest.empty() && std::find(kCommands.begin(), kCommands.end(), rest.front()) != kCommands.end()) {
        command = rest.front();
        rest.erase(rest.begin());
    }
    if (command.empty()) throw UsageError("config has no command and none was given");
    std::vector<std::string> out{command};
    out.insert(out.end(), spliced.begin(), spliced.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

void add_options(CLI::App& app, Options& opt) {
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--input", opt.input, "input series CSV (first column)");
    app.add_option("--output", opt.output, "output file (default stdout)");
    app.add_option("--model", opt.model, "model name, or a comma list for experiments");
    app.add_option("--n", opt.n, "sample size, or a comma list for experiments");
    app.add_option("--b", opt.b, "subsample block length (0 = rule of thumb)");
    app.add_option("--d", opt.d, "frequency grid denominator");
    app.add_option("--alpha", opt.alpha, "significance level");
    app.add_option("--weight", opt.weight, "weight function s1..s5");
    app.add_flag("--fpc,!--no-fpc", opt.fpc, "finite-population correction (default on)");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    app.add_option("--reps", opt.reps, "replications");
    app.add_option("--replication", opt.replication, "replication index of a single simulated series");
    app.add_option("--quantiles", opt.quantiles, "DEN, DEN:FIRST:LAST or a comma list of levels");
    app.add_option("--part", opt.part, "re or im");
    app.add_option("--tau1", opt.tau1, "first quantile level of a pointwise band");
    app.add_option("--tau2", opt.tau2, "second quantile level of a pointwise band");
    app.add_flag("--uniform", opt.uniform, "band uniform in frequency and quantile pairs");
    app.add_option("--kind", opt.kind, "experiment kind");
    app.add_option("--truth", opt.truth, "truth surface CSV for coverage experiments");
    app.add_option("--truth-n", opt.truth_n, "series length for Monte Carlo truth surfaces");
    app.add_option("--truth-reps", opt.truth_reps, "replications for Monte Carlo truth surfaces");
    app.add_option("--plot-data", opt.plot_data, "also write long-format summary CSV here");
    app.add_option("--summary", opt.summary, "experiment summary JSON path");
    app.add_flag("--tr2", opt.tr2, "recentred subsample statistic for test-tr");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

Provenance base_provenance(const Options& opt) {
    return {{"command", opt.command}, {"version", std::string(kVersion)}, {"rng", std::string(kRngAlgorithm)}};
}

RealSeries load_input(const Options& opt) {
    if (opt.input.empty()) throw UsageError("--input is required");
    RealSeries series = read_series_csv(opt.input);
    if (has_ties(series.values())) {
        std::cerr << "warning: input has ties; ranks use the right-continuous empirical cdf\n";
    }
    return series;
}

void add_inference(Provenance& p, const Options& opt, std::size_t b, const QuantileGrid& grid) {
    p.emplace_back("b", std::to_string(b));
    p.emplace_back("d", std::to_string(opt.d));
    p.emplace_back("alpha", format_double(opt.alpha));
    p.emplace_back("weight", opt.weight);
    p.emplace_back("fpc", opt.fpc ? "true" : "false");
    p.emplace_back("quantiles", join_levels(grid));
}

InferenceConfig inference_config(const Options& opt, std::size_t n) {
    InferenceConfig cfg;
    cfg.b = opt.b != 0 ? opt.b : rule_of_thumb_block(n);
    cfg.d = opt.d;
    cfg.alpha = opt.alpha;
    cfg.fpc = opt.fpc;
    cfg.weight = parse_weight(opt.weight);
    cfg.quantiles = default_quantiles(opt);
    cfg.seed = opt.seed;
    cfg.threads = resolve_threads(opt.threads);
    return cfg;
}

int cmd_estimate(const Options& opt) {
    const auto grid = default_quantiles(opt);
    const FrequencyGrid frequencies(opt.d);
    const auto series = load_input(opt);
    auto p = base_provenance(opt);
    p.emplace_back("input", opt.input);
    p.emplace_back("d", std::to_string(opt.d));
    p.emplace_back("quantiles", join_levels(grid));
    p.emplace_back("n", std::to_string(series.size()));
    const auto surface = integrated_spectrum(series.values(), frequencies, grid);
    Output out(opt.output);
    write_surface_csv(out.stream(), surface, p);
    return 0;
}

int cmd_band(const Options& opt) {
    const auto series = load_input(opt);
    const auto cfg = inference_config(opt, series.size());
    const Part part = parse_part(opt.part);
    auto p = base_provenance(opt);
    p.emplace_back("input", opt.input);
    add_inference(p, opt, cfg.b, cfg.quantiles);
    p.emplace_back("part", opt.part);
    std::vector<Band> bands;
    if (opt.uniform) {
        p.emplace_back("uniform", "true");
        bands.push_back(band_E(series, cfg, part, all_pairs(cfg.quantiles)));
    } else {
        p.emplace_back("tau1", format_double(opt.tau1));
        p.emplace_back("tau2", format_double(opt.tau2));
        bands.push_back(band_D(series, cfg, part, opt.tau1, opt.tau2));
    }
    p.emplace_back("critical", format_double(bands.front().critical));
    Output out(opt.output);
    write_band_csv(out.stream(), bands, p);
    return 0;
}

int cmd_test(const Options& opt, bool reversibility) {
    const auto series = load_input(opt);
    const auto cfg = inference_config(opt, series.size());
    if (cfg.b > series.size()) {
        throw std::invalid_argument("block length " + std::to_string(cfg.b) + " exceeds n = " +
                                    std::to_string(series.size()));
    }
    const auto set = product_grid(FrequencyGrid(cfg.d), cfg.quantiles);
    auto p = base_provenance(opt);
    p.emplace_back("input", opt.input);
    add_inference(p, opt, cfg.b, cfg.quantiles);
    TestReport report;
    if (reversibility) {
        p.emplace_back("tr2", opt.tr2 ? "true" : "false");
        report = p_tr(series, cfg, set, opt.tr2 ? ReversibilityVariant::Recentered : ReversibilityVariant::Centered0);
    } else {
        report = p_eq(series, cfg, set);
    }
    auto j = to_json(report);
    j["config"] = to_json(p);
    Output out(opt.output);
    out.stream() << j.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const Options& opt) {
    const auto model = find_model(opt.model);
    if (opt.n.empty()) throw UsageError("--n is required");
    const std::size_t n = parse_size(opt.n);
    const std::size_t reps = opt.reps == 0 ? 1 : opt.reps;
    auto write_one = [&](std::size_t r, std::ostream& out) {
        auto p = base_provenance(opt);
        p.emplace_back("model", model.name);
        p.emplace_back("n", std::to_string(n));
        p.emplace_back("seed", std::to_string(opt.seed));
        p.emplace_back("replication", std::to_string(r));
        write_series_csv(out, generate(model, n, replication_seed(opt.seed, model.name, n, r)), p);
    };
    if (reps == 1) {
        Output out(opt.output);
        write_one(opt.replication, out.stream());
        return 0;
    }
    if (opt.output.empty()) throw UsageError("--output DIR is required when --reps > 1");
    std::filesystem::create_directories(opt.output);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto path = std::filesystem::path(opt.output) /
                          (model.name + "_n" + std::to_string(n) + "_r" + std::to_string(r) + ".csv");
        Output out(path.string());
        write_one(r, out.stream());
    }
    return 0;
}

int cmd_truth_surface(const Options& opt) {
    const auto model = find_model(opt.model);
    const auto grid = default_quantiles(opt);
    const std::size_t length = opt.n.empty() ? opt.truth_n : parse_size(opt.n);
    const std::size_t reps = opt.reps == 0 ? opt.truth_reps : opt.reps;
    auto p = base_provenance(opt);
    p.emplace_back("model", model.name);
    p.emplace_back("n", std::to_string(length));
    p.emplace_back("reps", std::to_string(reps));
    p.emplace_back("quantiles", join_levels(grid));
    p.emplace_back("seed", std::to_string(opt.seed));
    const auto surface = monte_carlo_truth(model, length, reps, FrequencyGrid(static_cast<std::int64_t>(length)), grid,
                                           opt.seed, resolve_threads(opt.threads));
    Output out(opt.output);
    write_surface_csv(out.stream(), surface, p);
    return 0;
}

int cmd_experiment(const Options& opt) {
    ExperimentSpec spec;
    spec.kind = parse_experiment_kind(opt.kind);
    spec.models = split_list(opt.model);
    spec.sample_sizes.clear();
    for (const auto& item : split_list(opt.n.empty() ? "512" : opt.n)) spec.sample_sizes.push_back(parse_size(item));
    spec.replications = opt.reps == 0 ? 100 : opt.reps;
    spec.config.b = opt.b;
    spec.config.d = opt.d;
    spec.config.alpha = opt.alpha;
    spec.config.fpc = opt.fpc;
    spec.config.weight = parse_weight(opt.weight);
    spec.config.quantiles = default_quantiles(opt);
    spec.config.seed = opt.seed;
    spec.config.threads = resolve_threads(opt.threads);
    spec.part = parse_part(opt.part);
    spec.pairs = {{opt.tau1, opt.tau2}};
    if (!opt.truth.empty()) spec.truth_path = opt.truth;
    spec.truth_length = opt.truth_n;
    spec.truth_replications = opt.truth_reps;

    auto p = base_provenance(opt);
    p.emplace_back("kind", opt.kind);
    p.emplace_back("model", opt.model);
    p.emplace_back("n", opt.n.empty() ? "512" : opt.n);
    p.emplace_back("reps", std::to_string(spec.replications));
    add_inference(p, opt, opt.b, spec.config.quantiles);
    p.emplace_back("seed", std::to_string(opt.seed));
    p.emplace_back("part", opt.part);
    p.emplace_back("tau1", format_double(opt.tau1));
    p.emplace_back("tau2", format_double(opt.tau2));
    if (!opt.truth.empty()) p.emplace_back("truth", opt.truth);
    p.emplace_back("truth-n", std::to_string(opt.truth_n));
    p.emplace_back("truth-reps", std::to_string(opt.truth_reps));

    const auto result = run_experiment(spec);
    if (spec.kind == ExperimentKind::TruthSurface) {
        Output out(opt.output);
        for (const auto& [name, surface] : result.truths) {
            auto q = p;
            q.emplace_back("truth-model", name);
            write_surface_csv(out.stream(), surface, q);
        }
        return 0;
    }
    {
        Output out(opt.output);
        write_rows_csv(out.stream(), result, p);
    }
    const std::string summary_path = !opt.summary.empty() ? opt.summary
                                     : opt.output.empty() ? std::string()
                                                          : opt.output + ".summary.json";
    const auto summary = summary_json(result, p).dump(2);
    if (summary_path.empty()) {
        std::cerr << summary << '\n';
    } else {
        Output out(summary_path);
        out.stream() << summary << '\n';
    }
    if (!opt.plot_data.empty()) {
        Output out(opt.plot_data);
        write_plot_data(out.stream(), result);
    }
    return 0;
}

int cmd_catalog(const Options& opt) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& spec : model_catalog()) {
        list.push_back({{"name", spec.name}, {"family", std::string(to_string(spec.family))}, {"param", spec.param}});
    }
    Output out(opt.output);
    out.stream() << nlohmann::json{{"models", std::move(list)}}.dump(2) << '\n';
    return 0;
}

int run(const Options& opt) {
    if (opt.command == "estimate") return cmd_estimate(opt);
    if (opt.command == "band") return cmd_band(opt);
    if (opt.command == "test-tr") return cmd_test(opt, true);
    if (opt.command == "test-eq") return cmd_test(opt, false);
    if (opt.command == "simulate") return cmd_simulate(opt);
    if (opt.command == "truth-surface") return cmd_truth_surface(opt);
    if (opt.command == "experiment") return cmd_experiment(opt);
    if (opt.command == "catalog") return cmd_catalog(opt);
    throw UsageError("unknown command '" + opt.command + "'");
}

void print_usage(std::ostream& out) {
    out << "usage: icspec COMMAND [options]\n       icspec --config RESULT_FILE [overrides]\ncommands:";
    for (const auto& c : kCommands) out << ' ' << c;
    out << "\nrun 'icspec COMMAND --help' for the option list\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args.front() == "--help" || args.front() == "-h") {
        print_usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? kUsageError : 0;
    }
    if (args.front() == "--version") {
        std::cout << "icspec " << kVersion << '\n';
        return 0;
    }

    Options opt;
    try {
        args = expand_config(std::move(args));
        opt.command = args.front();
        if (std::find(kCommands.begin(), kCommands.end(), opt.command) == kCommands.end()) {
            throw UsageError("unknown command '" + opt.command + "'");
        }
        CLI::App app("icspec " + opt.command);
        add_options(app, opt);
        std::vector<std::string> rest(args.begin() + 1, args.end());
        std::reverse(rest.begin(), rest.end());
        try {
            app.parse(rest);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }
        (void)parse_weight(opt.weight);
        (void)parse_part(opt.part);
        if (opt.command == "experiment") (void)parse_experiment_kind(opt.kind);
    } catch (const std::exception& e) {
        std::cerr << "icspec: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        return run(opt);
    } catch (const UsageError& e) {
        std::cerr << "icspec: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "icspec: " << e.what() << '\n';
        return kDataError;
    }
}
