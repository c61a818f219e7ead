#include "icspec/experiment.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "icspec/competitors.hpp"
#include "icspec/inference.hpp"
#include "icspec/parallel.hpp"
#include "icspec/random.hpp"
#include "icspec/spectrum.hpp"
#include "icspec/subsample.hpp"

namespace icspec {
namespace {

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string pair_label(const QuantilePair& pair) {
    return format_double(pair.tau1) + "/" + format_double(pair.tau2);
}

SpectralSurface coverage_truth(const ExperimentSpec& spec, const ModelSpec& model, const QuantileGrid& levels) {
    if (model.family == ModelFamily::M0) return iid_truth_surface(FrequencyGrid(spec.config.d), levels);
    if (spec.truth_path) {
        auto truth = read_surface_csv(*spec.truth_path);
        for (double tau : levels.levels()) {
            if (!truth.quantiles().contains(tau)) {
                throw std::invalid_argument("truth surface lacks quantile level " + format_double(tau));
            }
        }
        return truth;
    }
    return monte_carlo_truth(model, spec.truth_length, spec.truth_replications,
                             FrequencyGrid(static_cast<std::int64_t>(spec.truth_length)), levels,
                             derive_seed(spec.config.seed, fnv1a(model.name)), spec.config.threads);
}

std::vector<ExperimentSummary> summarize(const std::vector<ExperimentRow>& rows, bool proportion) {
    std::vector<ExperimentSummary> summaries;
    std::map<std::tuple<std::string, std::size_t, std::string>, std::size_t> index;
    std::vector<double> sums;
    std::vector<double> squares;
    for (const auto& row : rows) {
        const auto key = std::make_tuple(row.model, row.n, row.label);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, summaries.size()).first;
            summaries.push_back({row.model, row.n, row.b, row.label, 0, 0.0, 0.0});
            sums.push_back(0.0);
            squares.push_back(0.0);
        }
        const double value = proportion ? row.outcome : row.statistic;
        ++summaries[it->second].replications;
        sums[it->second] += value;
        squares[it->second] += value * value;
    }
    for (std::size_t k = 0; k < summaries.size(); ++k) {
        const auto r = static_cast<double>(summaries[k].replications);
        const double mean = sums[k] / r;
        summaries[k].rate = mean;
        if (proportion) {
            summaries[k].mc_se = std::sqrt(mean * (1.0 - mean) / r);
        } else {
            const double variance = r > 1.0 ? (squares[k] - r * mean * mean) / (r - 1.0) : 0.0;
            summaries[k].mc_se = std::sqrt(std::max(variance, 0.0) / r);
        }
    }
    return summaries;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::CoveragePointwise: return "coverage-pointwise";
        case ExperimentKind::CoverageUniform: return "coverage-uniform";
        case ExperimentKind::SizePowerTr: return "size-power-tr";
        case ExperimentKind::SizePowerEq: return "size-power-eq";
        case ExperimentKind::TruthSurface: return "truth-surface";
        case ExperimentKind::Competitors: return "competitors";
    }
    return "size-power-tr";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    for (auto kind : {ExperimentKind::CoveragePointwise, ExperimentKind::CoverageUniform, ExperimentKind::SizePowerTr,
                      ExperimentKind::SizePowerEq, ExperimentKind::TruthSurface, ExperimentKind::Competitors}) {
        if (text == to_string(kind)) return kind;
    }
    throw std::invalid_argument("unknown experiment kind '" + std::string(text) + "'");
}

void ExperimentSpec::validate() const {
    if (replications < 1) throw std::invalid_argument("experiment needs at least one replication");
    if (models.empty()) throw std::invalid_argument("experiment needs at least one model");
    for (const auto& name : models) (void)find_model(name);
    if (kind == ExperimentKind::TruthSurface) {
        if (truth_length < 2) throw std::invalid_argument("truth length must be at least 2");
        return;
    }
    if (sample_sizes.empty()) throw std::invalid_argument("experiment needs at least one sample size");
    for (std::size_t n : sample_sizes) {
        if (kind == ExperimentKind::Competitors) {
            if (n < 2) throw std::invalid_argument("sample size must be at least 2");
            continue;
        }
        const std::size_t b = config.b != 0 ? config.b : rule_of_thumb_block(n);
        if (n < 2 * b) {
            throw std::invalid_argument("sample size " + std::to_string(n) + " is below 2b = " + std::to_string(2 * b));
        }
        InferenceConfig resolved = config;
        resolved.b = b;
        resolved.validate(n);
    }
    if (kind == ExperimentKind::CoveragePointwise && pairs.empty()) {
        throw std::invalid_argument("pointwise coverage needs at least one quantile pair");
    }
}

std::uint64_t replication_seed(std::uint64_t master, std::string_view model, std::size_t n, std::size_t replication) {
    return derive_seed(derive_seed(master ^ fnv1a(model), n), replication);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result;
    const std::size_t threads = resolve_threads(spec.config.threads);

    if (spec.kind == ExperimentKind::TruthSurface) {
        for (const auto& name : spec.models) {
            const auto model = find_model(name);
            result.truths.emplace_back(
                name, monte_carlo_truth(model, spec.truth_length, spec.replications,
                                        FrequencyGrid(static_cast<std::int64_t>(spec.truth_length)),
                                        spec.config.quantiles, derive_seed(spec.config.seed, fnv1a(name)), threads));
        }
        return result;
    }

    for (const auto& name : spec.models) {
        const auto model = find_model(name);
        for (std::size_t n : spec.sample_sizes) {
            InferenceConfig config = spec.config;
            config.b = spec.kind == ExperimentKind::Competitors ? 0 : (config.b != 0 ? config.b : rule_of_thumb_block(n));
            config.threads = 1;

            std::vector<QuantilePair> pairs;
            std::optional<SpectralSurface> truth;
            EvaluationSet set;
            switch (spec.kind) {
                case ExperimentKind::CoveragePointwise:
                    pairs = spec.pairs;
                    truth = coverage_truth(spec, model, levels_of(pairs));
                    break;
                case ExperimentKind::CoverageUniform:
                    pairs = all_pairs(config.quantiles);
                    truth = coverage_truth(spec, model, config.quantiles);
                    break;
                case ExperimentKind::SizePowerTr:
                case ExperimentKind::SizePowerEq:
                    set = product_grid(FrequencyGrid(config.d), config.quantiles);
                    break;
                default:
                    break;
            }

            std::vector<std::vector<ExperimentRow>> per_rep(spec.replications);
            parallel_for(spec.replications, threads, [&](std::size_t r) {
                const RealSeries series = generate(model, n, replication_seed(config.seed, name, n, r));
                auto& rows = per_rep[r];
                const auto row = [&](std::string label, double statistic, std::optional<double> p, double outcome) {
                    rows.push_back({name, n, config.b, r, std::move(label), statistic, p, outcome});
                };
                switch (spec.kind) {
                    case ExperimentKind::CoveragePointwise: {
                        const auto bands = bands_D(series, config, spec.part, pairs);
                        for (std::size_t p = 0; p < pairs.size(); ++p) {
                            const bool covered = coverage_indicator(bands[p], *truth, CoverageMode::Pointwise);
                            row(std::string(to_string(spec.part)) + "-" + pair_label(pairs[p]), bands[p].critical,
                                std::nullopt, covered ? 1.0 : 0.0);
                        }
                        break;
                    }
                    case ExperimentKind::CoverageUniform: {
                        const auto band = band_E(series, config, spec.part, pairs);
                        const bool covered = coverage_indicator(band, *truth, CoverageMode::Uniform);
                        row(std::string(to_string(spec.part)) + "-uniform-" + std::string(to_string(config.weight)),
                            band.critical, std::nullopt, covered ? 1.0 : 0.0);
                        break;
                    }
                    case ExperimentKind::SizePowerTr:
                    case ExperimentKind::SizePowerEq: {
                        const bool tr = spec.kind == ExperimentKind::SizePowerTr;
                        const auto report = tr ? p_tr(series, config, set) : p_eq(series, config, set);
                        row(report.test + (config.fpc ? "-fpc" : "") + "-" + std::string(to_string(config.weight)),
                            report.statistic, report.p_value, report.rejects() ? 1.0 : 0.0);
                        break;
                    }
                    case ExperimentKind::Competitors:
                        for (auto kind : {CompetitorKind::RR, CompetitorKind::CCK, CompetitorKind::PP,
                                          CompetitorKind::BS}) {
                            row(std::string(to_string(kind)), competitor_statistic(kind, series.values()),
                                std::nullopt, 0.0);
                        }
                        break;
                    case ExperimentKind::TruthSurface:
                        break;
                }
            });
            for (auto& rows : per_rep) {
                for (auto& r : rows) result.rows.push_back(std::move(r));
            }
        }
    }
    result.summaries = summarize(result.rows, spec.kind != ExperimentKind::Competitors);
    return result;
}

void write_rows_csv(std::ostream& out, const ExperimentResult& result, const Provenance& provenance) {
    write_provenance(out, provenance);
    out << "model,n,b,replication,label,statistic,p_value,outcome\n";
    for (const auto& row : result.rows) {
        out << row.model << ',' << row.n << ',' << row.b << ',' << row.replication << ',' << row.label << ','
            << format_double(row.statistic) << ',' << (row.p_value ? format_double(*row.p_value) : "NA") << ','
            << format_double(row.outcome) << '\n';
    }
}

nlohmann::json summary_json(const ExperimentResult& result, const Provenance& provenance) {
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& s : result.summaries) {
        summaries.push_back({{"model", s.model},
                             {"n", s.n},
                             {"b", s.b},
                             {"label", s.label},
                             {"replications", s.replications},
                             {"rate", s.rate},
                             {"mc_se", s.mc_se}});
    }
    return {{"config", to_json(provenance)}, {"summaries", std::move(summaries)}};
}

void write_plot_data(std::ostream& out, const ExperimentResult& result) {
    out << "model,n,b,label,metric,value\n";
    for (const auto& s : result.summaries) {
        const std::string prefix = s.model + ',' + std::to_string(s.n) + ',' + std::to_string(s.b) + ',' + s.label + ',';
        out << prefix << "rate," << format_double(s.rate) << '\n';
        out << prefix << "mc_se," << format_double(s.mc_se) << '\n';
    }
}

}  // namespace icspec
