#include "icspec/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "icspec/parallel.hpp"
#include "icspec/spectrum.hpp"

namespace icspec {

double fpc_factor(std::size_t b, std::size_t n) {
    if (b == 0 || b > n) throw std::invalid_argument("fpc_factor needs 0 < b <= n");
    if (b == n) return 1.0;
    return 1.0 / std::sqrt(1.0 - static_cast<double>(b) / static_cast<double>(n));
}

SpectralSurface subsample_surface(const RealSeries& series, std::size_t b, std::size_t t,
                                  const FrequencyGrid& frequencies, const QuantileGrid& quantiles) {
    if (b < 2 || b > series.size()) throw std::invalid_argument("block length must satisfy 2 <= b <= n");
    if (t > series.size() - b) {
        throw std::out_of_range("window start " + std::to_string(t) + " outside 0.." +
                                std::to_string(series.size() - b));
    }
    return integrated_spectrum(series.window(t, b), frequencies, quantiles);
}

std::vector<std::vector<double>> window_statistics(const RealSeries& series, std::size_t b,
                                                   const FrequencyGrid& frequencies, const QuantileGrid& quantiles,
                                                   std::size_t count, const WindowStatistic& statistic,
                                                   std::size_t threads) {
    if (b < 2 || b > series.size()) throw std::invalid_argument("block length must satisfy 2 <= b <= n");
    const std::size_t windows = series.size() - b + 1;
    std::vector<std::vector<double>> result(count, std::vector<double>(windows));
    parallel_for(windows, threads, [&](std::size_t t) {
        const auto surface = integrated_spectrum(series.window(t, b), frequencies, quantiles);
        std::vector<double> out(count);
        statistic(surface, out);
        for (std::size_t k = 0; k < count; ++k) result[k][t] = out[k];
    });
    return result;
}

double d_statistic(const SpectralSurface& sub, const SpectralSurface& full, Part part, double tau1, double tau2,
                   bool fpc, std::size_t b, std::size_t n) {
    if (!sub.same_grids(full)) throw std::invalid_argument("d_statistic: surfaces are on different grids");
    const std::size_t i = full.quantiles().index_of(tau1);
    const std::size_t j = full.quantiles().index_of(tau2);
    double deviation = 0.0;
    for (std::size_t ell = 0; ell < full.frequencies().size(); ++ell) {
        deviation = std::max(deviation, std::abs(part_of(sub.at(ell, i, j), part) - part_of(full.at(ell, i, j), part)));
    }
    if (!fpc || deviation == 0.0) return deviation;
    return fpc_factor(b, n) * deviation;
}

double e_statistic(const SpectralSurface& sub, const SpectralSurface& full, Part part,
                   std::span<const QuantilePair> pairs, WeightKind weight_kind, bool fpc, std::size_t b,
                   std::size_t n) {
    if (pairs.empty()) throw std::invalid_argument("e_statistic: empty quantile set");
    double result = 0.0;
    for (const auto& pair : pairs) {
        const double s = weight(weight_kind, pair.tau1, pair.tau2);
        if (!(s > 0.0)) throw std::invalid_argument("e_statistic: weight must be positive");
        result = std::max(result, d_statistic(sub, full, part, pair.tau1, pair.tau2, fpc, b, n) / s);
    }
    return result;
}

double empirical_quantile(std::span<const double> stats, double level) {
    if (stats.empty()) throw std::invalid_argument("empirical quantile of an empty distribution");
    if (!(level > 0.0 && level <= 1.0)) throw std::invalid_argument("quantile level must lie in (0,1]");
    std::vector<double> sorted(stats.begin(), stats.end());
    const auto size = static_cast<double>(sorted.size());
    // guard against level*size landing a hair above an integer
    auto rank = static_cast<std::size_t>(std::ceil(level * size - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
    return sorted[rank - 1];
}

std::vector<QuantilePair> all_pairs(const QuantileGrid& grid) {
    std::vector<QuantilePair> pairs;
    for (double a : grid.levels()) {
        for (double b : grid.levels()) pairs.push_back({a, b});
    }
    return pairs;
}

QuantileGrid levels_of(std::span<const QuantilePair> pairs, bool with_complements) {
    std::set<double> levels;
    const auto add = [&](double tau) {
        for (double existing : levels) {
            if (std::abs(existing - tau) <= 1e-12) return;
        }
        levels.insert(tau);
    };
    for (const auto& pair : pairs) {
        add(pair.tau1);
        add(pair.tau2);
        if (with_complements) {
            add(1.0 - pair.tau1);
            add(1.0 - pair.tau2);
        }
    }
    return QuantileGrid(std::vector<double>(levels.begin(), levels.end()));
}

std::vector<Band> bands_D(const RealSeries& series, const InferenceConfig& config, Part part,
                          std::span<const QuantilePair> pairs) {
    config.validate(series.size());
    if (pairs.empty()) throw std::invalid_argument("bands_D: no quantile pairs");
    const std::size_t n = series.size();
    const std::size_t b = config.b;
    const FrequencyGrid frequencies(config.d);
    const QuantileGrid quantiles = levels_of(pairs);
    const auto full = integrated_spectrum(series.values(), frequencies, quantiles);
    const double root_b = std::sqrt(static_cast<double>(b));

    const auto stats = window_statistics(
        series, b, frequencies, quantiles, pairs.size(),
        [&](const SpectralSurface& sub, std::span<double> out) {
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                out[p] = root_b * d_statistic(sub, full, part, pairs[p].tau1, pairs[p].tau2, config.fpc, b, n);
            }
        },
        config.threads);

    std::vector<Band> bands;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        Band band;
        band.part = part;
        band.frequencies = frequencies;
        band.distribution = {stats[p], b, n, config.fpc};
        band.critical = empirical_quantile(stats[p], 1.0 - config.alpha) / std::sqrt(static_cast<double>(n));
        const std::size_t i = quantiles.index_of(pairs[p].tau1);
        const std::size_t j = quantiles.index_of(pairs[p].tau2);
        for (std::size_t ell = 0; ell < frequencies.size(); ++ell) {
            band.cells.push_back({ell, pairs[p].tau1, pairs[p].tau2, part_of(full.at(ell, i, j), part), band.critical});
        }
        bands.push_back(std::move(band));
    }
    return bands;
}

Band band_D(const RealSeries& series, const InferenceConfig& config, Part part, double tau1, double tau2) {
    const QuantilePair pair{tau1, tau2};
    return std::move(bands_D(series, config, part, std::span<const QuantilePair>(&pair, 1)).front());
}

Band band_E(const RealSeries& series, const InferenceConfig& config, Part part, std::span<const QuantilePair> pairs) {
    config.validate(series.size());
    if (pairs.empty()) throw std::invalid_argument("band_E: no quantile pairs");
    for (const auto& pair : pairs) {
        if (!(weight(config.weight, pair.tau1, pair.tau2) > 0.0)) {
            throw std::invalid_argument("band_E: weight must be positive on the quantile set");
        }
    }
    const std::size_t n = series.size();
    const std::size_t b = config.b;
    const FrequencyGrid frequencies(config.d);
    const QuantileGrid quantiles = levels_of(pairs);
    const auto full = integrated_spectrum(series.values(), frequencies, quantiles);
    const double root_b = std::sqrt(static_cast<double>(b));

    auto stats = window_statistics(
        series, b, frequencies, quantiles, 1,
        [&](const SpectralSurface& sub, std::span<double> out) {
            out[0] = root_b * e_statistic(sub, full, part, pairs, config.weight, config.fpc, b, n);
        },
        config.threads);

    Band band;
    band.part = part;
    band.frequencies = frequencies;
    band.critical = empirical_quantile(stats[0], 1.0 - config.alpha) / std::sqrt(static_cast<double>(n));
    band.distribution = {std::move(stats[0]), b, n, config.fpc};
    for (const auto& pair : pairs) {
        const std::size_t i = quantiles.index_of(pair.tau1);
        const std::size_t j = quantiles.index_of(pair.tau2);
        const double half_width = band.critical * weight(config.weight, pair.tau1, pair.tau2);
        for (std::size_t ell = 0; ell < frequencies.size(); ++ell) {
            band.cells.push_back({ell, pair.tau1, pair.tau2, part_of(full.at(ell, i, j), part), half_width});
        }
    }
    return band;
}

bool coverage_indicator(const Band& band, const SpectralSurface& truth, CoverageMode mode) {
    const std::int64_t fine = truth.frequencies().d();
    const std::int64_t d = band.frequencies.d();
    if (fine < d) throw std::invalid_argument("truth grid N must be at least the band grid d");
    if (mode == CoverageMode::Pointwise) {
        for (const auto& cell : band.cells) {
            if (cell.tau1 != band.cells.front().tau1 || cell.tau2 != band.cells.front().tau2) {
                throw std::invalid_argument("pointwise coverage needs a band over a single quantile pair");
            }
        }
    }
    for (const auto& cell : band.cells) {
        const auto k = static_cast<std::size_t>(static_cast<std::int64_t>(cell.ell) * fine / d);
        const double value = part_of(
            truth.at(k, truth.quantiles().index_of(cell.tau1), truth.quantiles().index_of(cell.tau2)), band.part);
        if (value < cell.lower() || value > cell.upper()) return false;
    }
    return true;
}

}  // namespace icspec
