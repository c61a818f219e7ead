#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "icspec/core.hpp"
#include "icspec/io.hpp"
#include "icspec/models.hpp"
#include "icspec/weights.hpp"

namespace icspec {

enum class ExperimentKind { CoveragePointwise, CoverageUniform, SizePowerTr, SizePowerEq, TruthSurface, Competitors };

[[nodiscard]] std::string_view to_string(ExperimentKind kind) noexcept;
[[nodiscard]] ExperimentKind parse_experiment_kind(std::string_view text);

/**
 * @brief Monte Carlo design: models x sample sizes x replications under one inference setting.
 *
 * A block length of 0 selects rule_of_thumb_block(n) per sample size.
 */
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::SizePowerTr;
    std::vector<std::string> models{"M0"};
    std::vector<std::size_t> sample_sizes{512};
    std::size_t replications = 100;
    InferenceConfig config;
    Part part = Part::Real;
    std::vector<QuantilePair> pairs{{0.5, 0.5}};  ///< pointwise coverage pairs
    std::optional<std::string> truth_path;        ///< surface CSV for non-i.i.d. coverage truth
    std::size_t truth_length = 2048;              ///< N for Monte Carlo truth surfaces
    std::size_t truth_replications = 5000;

    void validate() const;
};

/// One replication outcome. `outcome` is the coverage or rejection indicator.
struct ExperimentRow {
    std::string model;
    std::size_t n = 0;
    std::size_t b = 0;
    std::size_t replication = 0;
    std::string label;
    double statistic = 0.0;
    std::optional<double> p_value;
    double outcome = 0.0;
};

/// Mean outcome per (model, n, label) with its binomial Monte Carlo standard error.
struct ExperimentSummary {
    std::string model;
    std::size_t n = 0;
    std::size_t b = 0;
    std::string label;
    std::size_t replications = 0;
    double rate = 0.0;
    double mc_se = 0.0;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<ExperimentSummary> summaries;
    std::vector<std::pair<std::string, SpectralSurface>> truths;  ///< only for truth-surface runs
};

/// Seed of replication r for (model, n): independent of the other models and sizes in the design.
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t master, std::string_view model, std::size_t n,
                                             std::size_t replication);

[[nodiscard]] ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_rows_csv(std::ostream& out, const ExperimentResult& result, const Provenance& provenance);
[[nodiscard]] nlohmann::json summary_json(const ExperimentResult& result, const Provenance& provenance);
/// Long format: model, n, b, label, metric, value.
void write_plot_data(std::ostream& out, const ExperimentResult& result);

}  // namespace icspec
