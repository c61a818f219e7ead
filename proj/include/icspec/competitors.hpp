#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "icspec/random.hpp"

namespace icspec {

/// Benchmark time-reversibility statistics.
enum class CompetitorKind {
    RR,   ///< mean of X_{t+1}^2 X_t - X_{t+1} X_t^2
    CCK,  ///< mean of D/(1 + D^2), D = X_{t+1} - X_t
    PP,   ///< mean of I{X_{t+1} > X_t} - 1/2
    BS    ///< sup |F(x,y) - F(y,x)| of the lag-one empirical distribution
};

[[nodiscard]] std::string_view to_string(CompetitorKind kind) noexcept;
[[nodiscard]] CompetitorKind parse_competitor(std::string_view text);

/// @throws std::invalid_argument for fewer than two observations
[[nodiscard]] double competitor_statistic(CompetitorKind kind, std::span<const double> series);

/// Produces one resampled series under the null hypothesis.
using NullResampler = std::function<std::vector<double>(std::span<const double>, Rng&)>;

/**
 * @brief Random permutation of the series.
 *
 * Destroys all serial dependence, so it only calibrates against i.i.d. nulls; meant for
 * sanity checks, not as a substitute for a dependence-preserving bootstrap.
 */
[[nodiscard]] NullResampler iid_permutation_resampler();

/// Share of `resamples` null draws with |T*| >= |T|.
[[nodiscard]] double resampled_p_value(CompetitorKind kind, std::span<const double> series,
                                       const NullResampler& resampler, std::size_t resamples, std::uint64_t seed);

}  // namespace icspec
