#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "icspec/core.hpp"
#include "icspec/subsample.hpp"
#include "icspec/weights.hpp"

namespace icspec {

/// Finite evaluation set S_n: every grid frequency crossed with a list of quantile pairs.
struct EvaluationSet {
    FrequencyGrid frequencies{32};
    std::vector<QuantilePair> pairs;

    [[nodiscard]] std::size_t size() const noexcept { return frequencies.size() * pairs.size(); }
};

[[nodiscard]] EvaluationSet product_grid(const FrequencyGrid& frequencies, const QuantileGrid& quantiles);

/// Frequencies 2 pi l/d and quantiles k/qstep, k = 1..qstep-1 (833 points for d = 32, qstep = 8).
[[nodiscard]] EvaluationSet default_grid_tr(std::int64_t d = 32, int qstep = 8);

/// Frequencies 2 pi l/d and lower-tail quantiles k/16, k = 2, 3, 4 (153 points for d = 32).
[[nodiscard]] EvaluationSet default_grid_eq(std::int64_t d = 32);

/// max over S of |Im F(lambda; tau1, tau2)| / s(tau1, tau2), read from a surface that covers S.
[[nodiscard]] double reversibility_deviation(const SpectralSurface& surface, const EvaluationSet& set,
                                             WeightKind weight_kind);

/// max over S of |F(lambda; tau1, tau2) - F(lambda; 1-tau1, 1-tau2)| / s(tau1, tau2), complex modulus.
[[nodiscard]] double tail_deviation(const SpectralSurface& surface, const EvaluationSet& set, WeightKind weight_kind);

/// sqrt(n) * reversibility_deviation of the full-sample estimate.
[[nodiscard]] double t_tr(const RealSeries& series, const EvaluationSet& set, WeightKind weight_kind);

/// sqrt(b) * reversibility_deviation on window t, times fpc_factor(b, n) when `fpc` is set.
[[nodiscard]] double t_tr_sub(const RealSeries& series, std::size_t b, std::size_t t, const EvaluationSet& set,
                              WeightKind weight_kind, bool fpc);

/// sqrt(n) * tail_deviation; every level in S must be <= 1/2.
[[nodiscard]] double t_eq(const RealSeries& series, const EvaluationSet& set, WeightKind weight_kind);

[[nodiscard]] double t_eq_sub(const RealSeries& series, std::size_t b, std::size_t t, const EvaluationSet& set,
                              WeightKind weight_kind, bool fpc);

enum class ReversibilityVariant {
    Centered0,  ///< window statistic sqrt(b) max |Im F_b| / s
    Recentered  ///< window statistic sqrt(b) max |Im F_b - Im F_n| / s
};

struct TestReport {
    std::string test;  ///< "tr" or "eq"
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
    std::size_t b = 0;
    std::int64_t d = 0;
    WeightKind weight = WeightKind::S4;
    bool fpc = true;
    std::size_t grid_size = 0;
    double alpha = 0.05;
    SubsampleDistribution distribution;

    [[nodiscard]] bool rejects() const noexcept { return p_value < alpha; }
};

/// Fraction of windows whose statistic strictly exceeds `statistic`.
[[nodiscard]] double exceedance_p_value(std::span<const double> window_stats, double statistic);

/// Subsampling test for pairwise time-reversibility.
[[nodiscard]] TestReport p_tr(const RealSeries& series, const InferenceConfig& config, const EvaluationSet& set,
                              ReversibilityVariant variant = ReversibilityVariant::Centered0);

/// Subsampling test for pairwise tail symmetry.
[[nodiscard]] TestReport p_eq(const RealSeries& series, const InferenceConfig& config, const EvaluationSet& set);

}  // namespace icspec
