#include "icspec/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace icspec {

RealSeries::RealSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw std::invalid_argument("series needs at least two observations");
    }
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (!std::isfinite(values_[t])) {
            throw std::invalid_argument("non-finite observation at index " + std::to_string(t));
        }
    }
}

std::span<const double> RealSeries::window(std::size_t start, std::size_t length) const {
    if (length == 0 || start > values_.size() || length > values_.size() - start) {
        throw std::out_of_range("window [" + std::to_string(start) + ", " +
                                std::to_string(start + length) + ") outside series of length " +
                                std::to_string(values_.size()));
    }
    return std::span<const double>(values_).subspan(start, length);
}

QuantileGrid::QuantileGrid(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw std::invalid_argument("quantile grid is empty");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const double tau = levels_[i];
        if (!(tau > 0.0 && tau < 1.0)) {
            throw std::invalid_argument("quantile level outside (0,1): " + std::to_string(tau));
        }
        if (i > 0 && !(levels_[i - 1] < tau)) {
            throw std::invalid_argument("quantile levels must be strictly increasing");
        }
    }
}

QuantileGrid QuantileGrid::fractions(int denominator, int first, int last) {
    if (denominator < 2 || first < 1 || last >= denominator || first > last) {
        throw std::invalid_argument("invalid fractional quantile grid");
    }
    std::vector<double> levels;
    for (int k = first; k <= last; ++k) {
        levels.push_back(static_cast<double>(k) / static_cast<double>(denominator));
    }
    return QuantileGrid(std::move(levels));
}

QuantileGrid QuantileGrid::uniform(int denominator) { return fractions(denominator, 1, denominator - 1); }

std::size_t QuantileGrid::index_of(double tau) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (std::abs(levels_[i] - tau) <= 1e-12) return i;
    }
    throw std::out_of_range("quantile level " + std::to_string(tau) + " not in grid");
}

bool QuantileGrid::contains(double tau) const noexcept {
    return std::any_of(levels_.begin(), levels_.end(),
                       [tau](double level) { return std::abs(level - tau) <= 1e-12; });
}

FrequencyGrid::FrequencyGrid(std::int64_t d) : d_(d) {
    if (d < 1) throw std::invalid_argument("frequency grid size d must be positive");
}

std::int64_t FrequencyGrid::last_included(std::size_t ell, std::int64_t m) const noexcept {
    const std::int64_t s = static_cast<std::int64_t>(ell) * m / d_;
    return std::min(s, m - 1);
}

SpectralSurface::SpectralSurface(FrequencyGrid frequencies, QuantileGrid quantiles)
    : frequencies_(frequencies),
      quantiles_(std::move(quantiles)),
      entries_(frequencies_.size() * quantiles_.size() * quantiles_.size()) {}

SpectralSurface& SpectralSurface::operator+=(const SpectralSurface& other) {
    if (!same_grids(other)) throw std::invalid_argument("surface grid mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

SpectralSurface& SpectralSurface::operator*=(double factor) noexcept {
    for (auto& z : entries_) z *= factor;
    return *this;
}

std::string_view to_string(Part part) noexcept { return part == Part::Real ? "re" : "im"; }

Part parse_part(std::string_view text) {
    if (text == "re" || text == "real") return Part::Real;
    if (text == "im" || text == "imag") return Part::Imag;
    throw std::invalid_argument("unknown part '" + std::string(text) + "' (expected re or im)");
}

std::string_view to_string(WeightKind kind) noexcept {
    switch (kind) {
        case WeightKind::S1: return "s1";
        case WeightKind::S2: return "s2";
        case WeightKind::S3: return "s3";
        case WeightKind::S4: return "s4";
        case WeightKind::S5: return "s5";
    }
    return "s4";
}

WeightKind parse_weight(std::string_view text) {
    if (text == "s1") return WeightKind::S1;
    if (text == "s2") return WeightKind::S2;
    if (text == "s3") return WeightKind::S3;
    if (text == "s4") return WeightKind::S4;
    if (text == "s5") return WeightKind::S5;
    throw std::invalid_argument("unknown weight function '" + std::string(text) + "' (expected s1..s5)");
}

void InferenceConfig::validate(std::size_t n) const {
    if (b < 2 || b > n) {
        throw std::invalid_argument("block length b=" + std::to_string(b) + " must satisfy 1 < b <= n=" +
                                    std::to_string(n));
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (d < 2) throw std::invalid_argument("frequency grid size d must be at least 2");
}

std::size_t rule_of_thumb_block(std::size_t n) {
    if (n < 32) throw std::invalid_argument("series too short for rule-of-thumb block");
    // 2^j <= 2 n^{2/3}  <=>  (2^{j-1})^3 <= n^2, compared in exact integer arithmetic.
    const auto n2 = static_cast<unsigned __int128>(n) * n;
    std::size_t block = 0;
    for (int j = 4; j <= 8; ++j) {
        const unsigned __int128 half = 1u << (j - 1);
        if (half * half * half <= n2) block = std::size_t{1} << j;
    }
    return block;
}

}  // namespace icspec
