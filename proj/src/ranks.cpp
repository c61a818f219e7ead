#include "icspec/ranks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace icspec {

std::vector<std::size_t> ecdf_counts(std::span<const double> window) {
    const std::size_t m = window.size();
    if (m == 0) throw std::invalid_argument("empirical cdf of an empty window");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return window[a] < window[b]; });

    std::vector<std::size_t> counts(m);
    std::size_t k = 0;
    while (k < m) {
        std::size_t last = k;
        while (last + 1 < m && window[order[last + 1]] == window[order[k]]) ++last;
        for (std::size_t r = k; r <= last; ++r) counts[order[r]] = last + 1;
        k = last + 1;
    }
    return counts;
}

std::vector<double> empirical_cdf_at_points(std::span<const double> window) {
    const auto counts = ecdf_counts(window);
    const double m = static_cast<double>(window.size());
    std::vector<double> values(counts.size());
    std::transform(counts.begin(), counts.end(), values.begin(),
                   [m](std::size_t c) { return static_cast<double>(c) / m; });
    return values;
}

bool has_ties(std::span<const double> window) {
    std::vector<double> sorted(window.begin(), window.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

IndicatorMatrix::IndicatorMatrix(std::size_t start, std::size_t rows, std::size_t columns)
    : start_(start), rows_(rows), columns_(columns), bits_(rows * columns, 0) {}

std::size_t IndicatorMatrix::column_sum(std::size_t j) const noexcept {
    const auto col = column(j);
    return static_cast<std::size_t>(std::count(col.begin(), col.end(), std::uint8_t{1}));
}

IndicatorMatrix indicator_matrix(std::span<const double> window, const QuantileGrid& grid, std::size_t start) {
    const auto counts = ecdf_counts(window);
    const std::size_t m = window.size();
    const double md = static_cast<double>(m);
    IndicatorMatrix matrix(start, m, grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t t = 0; t < m; ++t) {
            matrix.set(t, j, static_cast<double>(counts[t]) / md <= grid[j] ? 1 : 0);
        }
    }
    return matrix;
}

}  // namespace icspec
