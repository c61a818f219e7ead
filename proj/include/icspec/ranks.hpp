#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icspec/core.hpp"

namespace icspec {

/// Counts #{i : x_i <= x_t} for every t, via one sort (ties share the largest count).
[[nodiscard]] std::vector<std::size_t> ecdf_counts(std::span<const double> window);

/**
 * @brief Empirical distribution function of the window evaluated at its own points.
 *
 * Returns (1/m) #{i : x_i <= x_t} for each t; values lie in {1/m, ..., 1}.
 * Ties keep the literal <= count, so tied observations share the larger value.
 * @throws std::invalid_argument for an empty window
 */
[[nodiscard]] std::vector<double> empirical_cdf_at_points(std::span<const double> window);

/// True when at least two entries compare equal.
[[nodiscard]] bool has_ties(std::span<const double> window);

/**
 * @brief Binary matrix I{F_hat(X_t) <= tau_j}, rows t = 0..m-1, columns j over a quantile grid.
 */
class IndicatorMatrix {
public:
    IndicatorMatrix(std::size_t start, std::size_t rows, std::size_t columns);

    [[nodiscard]] std::size_t start() const noexcept { return start_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t columns() const noexcept { return columns_; }

    [[nodiscard]] std::uint8_t bit(std::size_t t, std::size_t j) const noexcept {
        return bits_[j * rows_ + t];
    }
    void set(std::size_t t, std::size_t j, std::uint8_t value) noexcept { bits_[j * rows_ + t] = value; }

    [[nodiscard]] std::span<const std::uint8_t> column(std::size_t j) const noexcept {
        return std::span<const std::uint8_t>(bits_).subspan(j * rows_, rows_);
    }
    [[nodiscard]] std::size_t column_sum(std::size_t j) const noexcept;

private:
    std::size_t start_;
    std::size_t rows_;
    std::size_t columns_;
    std::vector<std::uint8_t> bits_;
};

/// Indicator matrix of a window with its window-local empirical cdf; start is the window offset.
[[nodiscard]] IndicatorMatrix indicator_matrix(std::span<const double> window, const QuantileGrid& grid,
                                               std::size_t start = 0);

}  // namespace icspec
