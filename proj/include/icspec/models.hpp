#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "icspec/core.hpp"

namespace icspec {

enum class ModelFamily { M0, M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11, M12, M13, M14, M15 };

/**
 * @brief One simulation model and its parameter.
 *
 * `param` is family specific:
 *   M6, M7     AR coefficient phi
 *   M8, M10    asymmetric Gumbel dependence gamma (>= 1)
 *   M9, M11    zero-circulation mixing weight lambda in [0,1]
 *   M12, M13   Kendall's tau in (0,1), mapped to the Gumbel / Clayton parameter
 * and unused otherwise.
 */
struct ModelSpec {
    ModelFamily family = ModelFamily::M0;
    double param = 0.0;
    std::string name = "M0";
    std::size_t copula_grid = 1000;  ///< grid size for conditional copula inversion

    /// Throws std::invalid_argument when `param` is outside the family's range.
    void validate() const;
};

[[nodiscard]] std::string_view to_string(ModelFamily family) noexcept;

/// All 48 parameterisations M0 ... M15 with their catalog names (M6a, M8c, M13b, ...).
[[nodiscard]] const std::vector<ModelSpec>& model_catalog();

/// Catalog lookup by name; throws std::invalid_argument for unknown names.
[[nodiscard]] ModelSpec find_model(std::string_view name);

/// Draws X_0..X_{n-1}; identical (spec, n, seed) give identical series.
[[nodiscard]] RealSeries generate(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

/// Number of discarded initial steps for recursive and Markov-chain models.
inline constexpr std::size_t kBurnIn = 1000;

enum class CopulaFamily {
    AsymmetricGumbel,  ///< C1, (alpha, beta) = (1, 0.5), gamma >= 1
    ZeroCirculation,   ///< C2, mixing weight lambda in [0,1]
    Gumbel,            ///< C3, gamma >= 1
    Clayton,           ///< C4, gamma > 0
    Nelsen3,           ///< C5, piecewise-constant density
    Nelsen6,           ///< C6, piecewise-constant density
};

/// Copula distribution function C(u, v) of the closed-form families C1, C3, C4.
[[nodiscard]] double copula_cdf(CopulaFamily family, double param, double u, double v);

/**
 * @brief Conditional distribution P(U <= u_g | V = v_h) tabulated on a G x G grid.
 *
 * Grid nodes are u_g = g/(G-1) and v_h = h/(G-1). Each row is non-decreasing, starts at 0
 * and ends at 1.
 */
class CopulaGrid {
public:
    CopulaGrid(std::size_t size, std::vector<double> table);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] double node(std::size_t g) const noexcept {
        return static_cast<double>(g) / static_cast<double>(size_ - 1);
    }
    [[nodiscard]] std::span<const double> row(std::size_t h) const noexcept {
        return std::span<const double>(table_).subspan(h * size_, size_);
    }
    [[nodiscard]] std::size_t nearest_row(double v) const noexcept;

private:
    std::size_t size_;
    std::vector<double> table_;
};

[[nodiscard]] CopulaGrid build_copula_grid(CopulaFamily family, double param, std::size_t size = 1000);

/// Shared, lazily built grid; repeated requests for the same (family, param, size) reuse one table.
[[nodiscard]] std::shared_ptr<const CopulaGrid> cached_copula_grid(CopulaFamily family, double param,
                                                                   std::size_t size = 1000);

/**
 * @brief Inverse of u -> P(U <= u | V = v) on the nearest grid row to v.
 *
 * Finds the first node whose conditional cdf reaches `u` and interpolates linearly within
 * the preceding cell; the result is clamped to the open unit interval.
 */
[[nodiscard]] double conditional_inverse(const CopulaGrid& grid, double u, double v);

/// Gumbel parameter from Kendall's tau: 1/(1 - tau).
[[nodiscard]] double gumbel_from_kendall(double tau);
/// Clayton parameter from Kendall's tau: 2 tau/(1 - tau).
[[nodiscard]] double clayton_from_kendall(double tau);

}  // namespace icspec
