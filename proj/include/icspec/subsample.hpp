#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "icspec/core.hpp"
#include "icspec/weights.hpp"

namespace icspec {

/// Subsampled statistics over window starts t = 0..n-b.
struct SubsampleDistribution {
    std::vector<double> stats;
    std::size_t b = 0;
    std::size_t n = 0;
    bool fpc = false;
};

/// (1 - b/n)^{-1/2}; the single window at b = n equals the sample and gets factor 1.
[[nodiscard]] double fpc_factor(std::size_t b, std::size_t n);

/// Integrated spectrum of X_t..X_{t+b-1} with the window's own empirical cdf.
[[nodiscard]] SpectralSurface subsample_surface(const RealSeries& series, std::size_t b, std::size_t t,
                                                const FrequencyGrid& frequencies, const QuantileGrid& quantiles);

/**
 * @brief Evaluates `count` statistics on every length-b window.
 *
 * `statistic(surface, out)` fills `out` (size `count`) for one window. The result is indexed
 * [statistic][t]; windows may run in parallel but slot t always holds window t.
 */
using WindowStatistic = std::function<void(const SpectralSurface&, std::span<double>)>;
[[nodiscard]] std::vector<std::vector<double>> window_statistics(const RealSeries& series, std::size_t b,
                                                                 const FrequencyGrid& frequencies,
                                                                 const QuantileGrid& quantiles, std::size_t count,
                                                                 const WindowStatistic& statistic,
                                                                 std::size_t threads = 1);

/**
 * @brief max over the frequency grid of |part(sub) - part(full)| at (tau1, tau2),
 * times fpc_factor(b, n) when `fpc` is set.
 * @throws std::invalid_argument when the surfaces are on different grids
 */
[[nodiscard]] double d_statistic(const SpectralSurface& sub, const SpectralSurface& full, Part part, double tau1,
                                 double tau2, bool fpc, std::size_t b, std::size_t n);

/// max over `pairs` of d_statistic / weight.
[[nodiscard]] double e_statistic(const SpectralSurface& sub, const SpectralSurface& full, Part part,
                                 std::span<const QuantilePair> pairs, WeightKind weight_kind, bool fpc, std::size_t b,
                                 std::size_t n);

/**
 * @brief Smallest x among `stats` with #{stats <= x}/size >= level.
 *
 * Equals the order statistic of rank ceil(level * size).
 */
[[nodiscard]] double empirical_quantile(std::span<const double> stats, double level);

struct BandCell {
    std::size_t ell;
    double tau1;
    double tau2;
    double center;
    double half_width;

    [[nodiscard]] double lower() const noexcept { return center - half_width; }
    [[nodiscard]] double upper() const noexcept { return center + half_width; }
};

/// Confidence band for one part of the integrated spectrum over a set of grid cells.
struct Band {
    Part part = Part::Real;
    FrequencyGrid frequencies{32};
    double critical = 0.0;  ///< C_{D,alpha} or C_{E,alpha}
    SubsampleDistribution distribution;
    std::vector<BandCell> cells;
};

/// Band uniform in lambda at a fixed pair: estimate +/- C_{D,alpha}, constant over frequencies.
[[nodiscard]] Band band_D(const RealSeries& series, const InferenceConfig& config, Part part, double tau1,
                          double tau2);

/// Pointwise-in-(tau1, tau2) bands for several pairs from one pass over the windows.
[[nodiscard]] std::vector<Band> bands_D(const RealSeries& series, const InferenceConfig& config, Part part,
                                        std::span<const QuantilePair> pairs);

/// Band uniform in (lambda, tau1, tau2) over `pairs`: estimate +/- C_{E,alpha} s(tau1, tau2).
[[nodiscard]] Band band_E(const RealSeries& series, const InferenceConfig& config, Part part,
                          std::span<const QuantilePair> pairs);

enum class CoverageMode { Pointwise, Uniform };

/**
 * @brief True iff the truth lies in the band at every cell.
 *
 * The truth surface lives on a Fourier grid of size N >= d; band frequency 2 pi l/d is
 * compared with truth frequency 2 pi floor(N l/d)/N. Pointwise mode requires a band over a
 * single quantile pair.
 */
[[nodiscard]] bool coverage_indicator(const Band& band, const SpectralSurface& truth, CoverageMode mode);

/// Every ordered pair of grid levels.
[[nodiscard]] std::vector<QuantilePair> all_pairs(const QuantileGrid& grid);

/// Sorted distinct levels appearing in `pairs` (optionally with their complements 1 - tau).
[[nodiscard]] QuantileGrid levels_of(std::span<const QuantilePair> pairs, bool with_complements = false);

}  // namespace icspec
