#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/**
 * @brief Ordered sequence of finite real observations X_0, ..., X_{n-1}.
 *
 * Construction rejects non-finite entries and series shorter than two.
 */
class RealSeries {
public:
    explicit RealSeries(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t t) const noexcept { return values_[t]; }

    /// Window X_start, ..., X_{start+length-1}.
    [[nodiscard]] std::span<const double> window(std::size_t start, std::size_t length) const;

private:
    std::vector<double> values_;
};

/**
 * @brief Strictly increasing finite set of quantile levels in (0,1).
 */
class QuantileGrid {
public:
    explicit QuantileGrid(std::vector<double> levels);

    /// Levels k/denominator for k = first, ..., last.
    [[nodiscard]] static QuantileGrid fractions(int denominator, int first, int last);
    /// Levels k/denominator for k = 1, ..., denominator - 1.
    [[nodiscard]] static QuantileGrid uniform(int denominator);

    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return levels_[i]; }
    [[nodiscard]] std::span<const double> levels() const noexcept { return levels_; }

    /// Index of the level equal to tau within 1e-12; throws std::out_of_range if absent.
    [[nodiscard]] std::size_t index_of(double tau) const;
    [[nodiscard]] bool contains(double tau) const noexcept;

    friend bool operator==(const QuantileGrid&, const QuantileGrid&) = default;

private:
    std::vector<double> levels_;
};

/**
 * @brief Frequencies 2*pi*l/d for l = 0, ..., floor(d/2).
 *
 * Points are kept as integer pairs (l, d); the radian value is derived on demand so
 * that cutoff comparisons against Fourier frequencies 2*pi*s/m are exact.
 */
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::int64_t d);

    [[nodiscard]] std::int64_t d() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(d_ / 2 + 1); }
    [[nodiscard]] double lambda(std::size_t ell) const noexcept {
        return kTwoPi * static_cast<double>(ell) / static_cast<double>(d_);
    }
    /// Largest s in [0, m-1] with 2*pi*s/m <= 2*pi*ell/d.
    [[nodiscard]] std::int64_t last_included(std::size_t ell, std::int64_t m) const noexcept;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
    std::int64_t d_;
};

/**
 * @brief Complex surface indexed by (frequency index l, quantile index i, quantile index j).
 */
class SpectralSurface {
public:
    SpectralSurface(FrequencyGrid frequencies, QuantileGrid quantiles);

    [[nodiscard]] const FrequencyGrid& frequencies() const noexcept { return frequencies_; }
    [[nodiscard]] const QuantileGrid& quantiles() const noexcept { return quantiles_; }

    [[nodiscard]] Complex& at(std::size_t ell, std::size_t i, std::size_t j) noexcept {
        return entries_[offset(ell, i, j)];
    }
    [[nodiscard]] const Complex& at(std::size_t ell, std::size_t i, std::size_t j) const noexcept {
        return entries_[offset(ell, i, j)];
    }

    [[nodiscard]] std::span<Complex> entries() noexcept { return entries_; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }

    [[nodiscard]] bool same_grids(const SpectralSurface& other) const noexcept {
        return frequencies_ == other.frequencies_ && quantiles_ == other.quantiles_;
    }

    SpectralSurface& operator+=(const SpectralSurface& other);
    SpectralSurface& operator*=(double factor) noexcept;

private:
    [[nodiscard]] std::size_t offset(std::size_t ell, std::size_t i, std::size_t j) const noexcept {
        const std::size_t k = quantiles_.size();
        return (ell * k + i) * k + j;
    }

    FrequencyGrid frequencies_;
    QuantileGrid quantiles_;
    std::vector<Complex> entries_;
};

enum class Part { Real, Imag };

[[nodiscard]] inline double part_of(const Complex& z, Part part) noexcept {
    return part == Part::Real ? z.real() : z.imag();
}
[[nodiscard]] std::string_view to_string(Part part) noexcept;
[[nodiscard]] Part parse_part(std::string_view text);

enum class WeightKind { S1, S2, S3, S4, S5 };

[[nodiscard]] std::string_view to_string(WeightKind kind) noexcept;
[[nodiscard]] WeightKind parse_weight(std::string_view text);

/// Resolved inference settings shared by the band and test procedures.
struct InferenceConfig {
    std::size_t b = 0;  ///< subsample block length
    std::int64_t d = 32;
    double alpha = 0.05;
    bool fpc = true;
    WeightKind weight = WeightKind::S4;
    QuantileGrid quantiles = QuantileGrid::uniform(8);
    std::uint64_t seed = 0;
    std::size_t threads = 1;

    /// Throws std::invalid_argument when the settings are inconsistent with a series of length n.
    void validate(std::size_t n) const;
};

/// max{2^j : 2^j <= 2 n^{2/3}, j = 4, ..., 8}; requires n >= 32.
[[nodiscard]] std::size_t rule_of_thumb_block(std::size_t n);

}  // namespace icspec
