#include "icspec/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "icspec/spectrum.hpp"

namespace icspec {
namespace {

struct ResolvedPair {
    std::size_t i, j;    // (tau1, tau2)
    std::size_t ci, cj;  // (1 - tau1, 1 - tau2), used by the tail statistic only
    double scale;        // 1 / s(tau1, tau2)
};

std::vector<ResolvedPair> resolve(const QuantileGrid& quantiles, const EvaluationSet& set, WeightKind weight_kind,
                                  bool complements) {
    std::vector<ResolvedPair> resolved;
    resolved.reserve(set.pairs.size());
    for (const auto& pair : set.pairs) {
        ResolvedPair r{};
        r.i = quantiles.index_of(pair.tau1);
        r.j = quantiles.index_of(pair.tau2);
        if (complements) {
            r.ci = quantiles.index_of(1.0 - pair.tau1);
            r.cj = quantiles.index_of(1.0 - pair.tau2);
        }
        r.scale = 1.0 / weight(weight_kind, pair.tau1, pair.tau2);
        resolved.push_back(r);
    }
    return resolved;
}

void check_frequencies(const SpectralSurface& surface, const EvaluationSet& set) {
    if (!(surface.frequencies() == set.frequencies)) {
        throw std::invalid_argument("surface and evaluation set use different frequency grids");
    }
}

double reversibility_max(const SpectralSurface& surface, std::size_t frequencies,
                         const std::vector<ResolvedPair>& pairs) {
    double result = 0.0;
    for (const auto& p : pairs) {
        for (std::size_t ell = 0; ell < frequencies; ++ell) {
            result = std::max(result, std::abs(surface.at(ell, p.i, p.j).imag()) * p.scale);
        }
    }
    return result;
}

double recentered_max(const SpectralSurface& sub, const SpectralSurface& full, std::size_t frequencies,
                      const std::vector<ResolvedPair>& pairs) {
    double result = 0.0;
    for (const auto& p : pairs) {
        for (std::size_t ell = 0; ell < frequencies; ++ell) {
            const double diff = sub.at(ell, p.i, p.j).imag() - full.at(ell, p.i, p.j).imag();
            result = std::max(result, std::abs(diff) * p.scale);
        }
    }
    return result;
}

double tail_max(const SpectralSurface& surface, std::size_t frequencies, const std::vector<ResolvedPair>& pairs) {
    double result = 0.0;
    for (const auto& p : pairs) {
        for (std::size_t ell = 0; ell < frequencies; ++ell) {
            result = std::max(result, std::abs(surface.at(ell, p.i, p.j) - surface.at(ell, p.ci, p.cj)) * p.scale);
        }
    }
    return result;
}

void check_lower_tail(const EvaluationSet& set) {
    for (const auto& pair : set.pairs) {
        if (pair.tau1 > 0.5 || pair.tau2 > 0.5) {
            throw std::invalid_argument("tail-symmetry set must only contain levels <= 1/2");
        }
    }
}

void check_set(const EvaluationSet& set) {
    if (set.pairs.empty()) throw std::invalid_argument("evaluation set has no quantile pairs");
}

}  // namespace

EvaluationSet product_grid(const FrequencyGrid& frequencies, const QuantileGrid& quantiles) {
    return {frequencies, all_pairs(quantiles)};
}

EvaluationSet default_grid_tr(std::int64_t d, int qstep) {
    return product_grid(FrequencyGrid(d), QuantileGrid::uniform(qstep));
}

EvaluationSet default_grid_eq(std::int64_t d) { return product_grid(FrequencyGrid(d), QuantileGrid::fractions(16, 2, 4)); }

double reversibility_deviation(const SpectralSurface& surface, const EvaluationSet& set, WeightKind weight_kind) {
    check_frequencies(surface, set);
    return reversibility_max(surface, set.frequencies.size(), resolve(surface.quantiles(), set, weight_kind, false));
}

double tail_deviation(const SpectralSurface& surface, const EvaluationSet& set, WeightKind weight_kind) {
    check_frequencies(surface, set);
    return tail_max(surface, set.frequencies.size(), resolve(surface.quantiles(), set, weight_kind, true));
}

double t_tr(const RealSeries& series, const EvaluationSet& set, WeightKind weight_kind) {
    check_set(set);
    const auto surface = integrated_spectrum(series.values(), set.frequencies, levels_of(set.pairs));
    return std::sqrt(static_cast<double>(series.size())) * reversibility_deviation(surface, set, weight_kind);
}

double t_tr_sub(const RealSeries& series, std::size_t b, std::size_t t, const EvaluationSet& set,
                WeightKind weight_kind, bool fpc) {
    check_set(set);
    const auto surface = subsample_surface(series, b, t, set.frequencies, levels_of(set.pairs));
    const double value = std::sqrt(static_cast<double>(b)) * reversibility_deviation(surface, set, weight_kind);
    return fpc ? fpc_factor(b, series.size()) * value : value;
}

double t_eq(const RealSeries& series, const EvaluationSet& set, WeightKind weight_kind) {
    check_set(set);
    check_lower_tail(set);
    const auto surface = integrated_spectrum(series.values(), set.frequencies, levels_of(set.pairs, true));
    return std::sqrt(static_cast<double>(series.size())) * tail_deviation(surface, set, weight_kind);
}

double t_eq_sub(const RealSeries& series, std::size_t b, std::size_t t, const EvaluationSet& set,
                WeightKind weight_kind, bool fpc) {
    check_set(set);
    check_lower_tail(set);
    const auto surface = subsample_surface(series, b, t, set.frequencies, levels_of(set.pairs, true));
    const double value = std::sqrt(static_cast<double>(b)) * tail_deviation(surface, set, weight_kind);
    return fpc ? fpc_factor(b, series.size()) * value : value;
}

double exceedance_p_value(std::span<const double> window_stats, double statistic) {
    if (window_stats.empty()) throw std::invalid_argument("no window statistics");
    const auto above = std::count_if(window_stats.begin(), window_stats.end(),
                                     [statistic](double value) { return value > statistic; });
    return static_cast<double>(above) / static_cast<double>(window_stats.size());
}

TestReport p_tr(const RealSeries& series, const InferenceConfig& config, const EvaluationSet& set,
                ReversibilityVariant variant) {
    config.validate(series.size());
    check_set(set);
    const std::size_t n = series.size();
    const std::size_t b = config.b;
    const QuantileGrid quantiles = levels_of(set.pairs);
    const auto pairs = resolve(quantiles, set, config.weight, false);
    const auto full = integrated_spectrum(series.values(), set.frequencies, quantiles);
    const std::size_t frequencies = set.frequencies.size();

    TestReport report;
    report.test = "tr";
    report.statistic = std::sqrt(static_cast<double>(n)) * reversibility_max(full, frequencies, pairs);

    const double scale = std::sqrt(static_cast<double>(b)) * (config.fpc ? fpc_factor(b, n) : 1.0);
    auto stats = window_statistics(
        series, b, set.frequencies, quantiles, 1,
        [&](const SpectralSurface& sub, std::span<double> out) {
            const double deviation = variant == ReversibilityVariant::Centered0
                                         ? reversibility_max(sub, frequencies, pairs)
                                         : recentered_max(sub, full, frequencies, pairs);
            out[0] = scale * deviation;
        },
        config.threads);

    report.p_value = exceedance_p_value(stats[0], report.statistic);
    report.n = n;
    report.b = b;
    report.d = set.frequencies.d();
    report.weight = config.weight;
    report.fpc = config.fpc;
    report.grid_size = set.size();
    report.alpha = config.alpha;
    report.distribution = {std::move(stats[0]), b, n, config.fpc};
    return report;
}

TestReport p_eq(const RealSeries& series, const InferenceConfig& config, const EvaluationSet& set) {
    config.validate(series.size());
    check_set(set);
    check_lower_tail(set);
    const std::size_t n = series.size();
    const std::size_t b = config.b;
    const QuantileGrid quantiles = levels_of(set.pairs, true);
    const auto pairs = resolve(quantiles, set, config.weight, true);
    const auto full = integrated_spectrum(series.values(), set.frequencies, quantiles);
    const std::size_t frequencies = set.frequencies.size();

    TestReport report;
    report.test = "eq";
    report.statistic = std::sqrt(static_cast<double>(n)) * tail_max(full, frequencies, pairs);

    const double scale = std::sqrt(static_cast<double>(b)) * (config.fpc ? fpc_factor(b, n) : 1.0);
    auto stats = window_statistics(
        series, b, set.frequencies, quantiles, 1,
        [&](const SpectralSurface& sub, std::span<double> out) { out[0] = scale * tail_max(sub, frequencies, pairs); },
        config.threads);

    report.p_value = exceedance_p_value(stats[0], report.statistic);
    report.n = n;
    report.b = b;
    report.d = set.frequencies.d();
    report.weight = config.weight;
    report.fpc = config.fpc;
    report.grid_size = set.size();
    report.alpha = config.alpha;
    report.distribution = {std::move(stats[0]), b, n, config.fpc};
    return report;
}

double weight(WeightKind kind, double tau1, double tau2) {
    if (!(tau1 > 0.0 && tau1 < 1.0 && tau2 > 0.0 && tau2 < 1.0)) {
        throw std::domain_error("weight functions need quantile levels in (0,1)");
    }
    const double s3 = std::min(tau1, tau2) - tau1 * tau2;
    switch (kind) {
        case WeightKind::S1: return std::sqrt(tau1 * (1.0 - tau1) * tau2 * (1.0 - tau2));
        case WeightKind::S2: return std::max(tau1, tau2) - tau1 * tau2;
        case WeightKind::S3: return s3;
        case WeightKind::S4: return 1.0;
        case WeightKind::S5: return std::sqrt(s3);
    }
    return 1.0;
}

}  // namespace icspec
