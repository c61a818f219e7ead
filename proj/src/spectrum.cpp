#include "icspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "icspec/models.hpp"
#include "icspec/parallel.hpp"
#include "icspec/random.hpp"
#include "icspec/ranks.hpp"

namespace icspec {
namespace {

// e^{-i 2 pi r / n} with r reduced mod n first, so large products k*s lose no accuracy.
Complex unit_root(std::int64_t r, std::int64_t n) {
    r %= n;
    if (r < 0) r += n;
    const double angle = -kTwoPi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<double> indicator_column(std::span<const std::size_t> counts, double tau) {
    const double m = static_cast<double>(counts.size());
    std::vector<double> column(counts.size());
    for (std::size_t t = 0; t < counts.size(); ++t) {
        column[t] = static_cast<double>(counts[t]) / m <= tau ? 1.0 : 0.0;
    }
    return column;
}

std::vector<Complex> half_dft(std::span<const double> column) {
    std::vector<Complex> half(column.size() / 2 + 1);
    detail::real_dft(column, half);
    return half;
}

std::vector<Complex> expand_half(const std::vector<Complex>& half, std::size_t m) {
    std::vector<Complex> full(m - 1);
    for (std::size_t s = 1; s < m; ++s) {
        full[s - 1] = s <= m / 2 ? half[s] : std::conj(half[m - s]);
    }
    return full;
}

}  // namespace

std::vector<Complex> rank_dft(std::span<const std::uint8_t> column) {
    const std::size_t m = column.size();
    if (m < 2) throw std::invalid_argument("rank_dft needs a window of length >= 2");
    std::vector<double> values(column.begin(), column.end());
    return expand_half(half_dft(values), m);
}

std::vector<Complex> cr_periodogram(std::span<const double> window, double tau1, double tau2) {
    const std::size_t m = window.size();
    if (m < 2) throw std::invalid_argument("cr_periodogram needs a window of length >= 2");
    const auto counts = ecdf_counts(window);
    const auto d1 = expand_half(half_dft(indicator_column(counts, tau1)), m);
    const auto d2 = expand_half(half_dft(indicator_column(counts, tau2)), m);
    std::vector<Complex> periodogram(m - 1);
    const double scale = 1.0 / (kTwoPi * static_cast<double>(m));
    for (std::size_t k = 0; k + 1 < m; ++k) periodogram[k] = scale * d1[k] * std::conj(d2[k]);
    return periodogram;
}

SpectralSurface integrated_spectrum(std::span<const double> window, const FrequencyGrid& frequencies,
                                    const QuantileGrid& quantiles) {
    const std::size_t m = window.size();
    if (m < 2) throw std::invalid_argument("integrated_spectrum needs a window of length >= 2");
    const std::size_t levels = quantiles.size();
    const auto counts = ecdf_counts(window);

    std::vector<std::vector<Complex>> dft(levels);
    for (std::size_t i = 0; i < levels; ++i) dft[i] = half_dft(indicator_column(counts, quantiles[i]));

    SpectralSurface surface(frequencies, quantiles);
    const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
    std::vector<Complex> running(levels * levels);
    std::int64_t included = 0;  // frequencies s = 1..included are already summed
    for (std::size_t ell = 0; ell < frequencies.size(); ++ell) {
        const std::int64_t last = frequencies.last_included(ell, static_cast<std::int64_t>(m));
        for (std::int64_t s = included + 1; s <= last; ++s) {
            for (std::size_t i = 0; i < levels; ++i) {
                const Complex di = dft[i][static_cast<std::size_t>(s)];
                running[i * levels + i] += std::norm(di);
                for (std::size_t j = i + 1; j < levels; ++j) {
                    running[i * levels + j] += di * std::conj(dft[j][static_cast<std::size_t>(s)]);
                }
            }
        }
        included = std::max(included, last);
        for (std::size_t i = 0; i < levels; ++i) {
            surface.at(ell, i, i) = Complex(scale * running[i * levels + i].real(), 0.0);
            for (std::size_t j = i + 1; j < levels; ++j) {
                const Complex value = scale * running[i * levels + j];
                surface.at(ell, i, j) = value;
                surface.at(ell, j, i) = std::conj(value);
            }
        }
    }
    return surface;
}

LagWeights::LagWeights(std::size_t n, const FrequencyGrid& frequencies, std::size_t ell)
    : n_(n), values_(n < 1 ? 0 : 2 * n - 1) {
    if (n < 2) throw std::invalid_argument("lag weights need n >= 2");
    const auto nn = static_cast<std::int64_t>(n);
    const std::int64_t last = frequencies.last_included(ell, nn);
    for (std::int64_t k = -(nn - 1); k <= nn - 1; ++k) {
        Complex sum{};
        for (std::int64_t s = 1; s <= last; ++s) sum += unit_root(k * s, nn);
        values_[static_cast<std::size_t>(k + nn - 1)] = (kTwoPi / static_cast<double>(n)) * sum;
    }
}

Complex LagWeights::operator()(std::int64_t k) const {
    const auto nn = static_cast<std::int64_t>(n_);
    if (k <= -nn || k >= nn) throw std::out_of_range("lag outside (-n, n)");
    return values_[static_cast<std::size_t>(k + nn - 1)];
}

double rank_cumulant(std::span<const double> window, std::int64_t k, double tau1, double tau2) {
    const auto m = static_cast<std::int64_t>(window.size());
    if (k <= -m || k >= m) {
        throw std::out_of_range("lag " + std::to_string(k) + " outside window of length " + std::to_string(m));
    }
    const auto counts = ecdf_counts(window);
    const auto lead = indicator_column(counts, tau1);
    const auto base = indicator_column(counts, tau2);
    double sum = 0.0;
    for (std::int64_t t = std::max<std::int64_t>(0, -k); t <= std::min(m - 1, m - 1 - k); ++t) {
        sum += (lead[static_cast<std::size_t>(t + k)] - tau1) * (base[static_cast<std::size_t>(t)] - tau2);
    }
    return sum / static_cast<double>(m - std::abs(k));
}

Complex integrated_spectrum_lagform(std::span<const double> window, const FrequencyGrid& frequencies,
                                    std::size_t ell, double tau1, double tau2) {
    const std::size_t m = window.size();
    if (m < 2) throw std::invalid_argument("integrated_spectrum_lagform needs a window of length >= 2");
    const LagWeights weights(m, frequencies, ell);
    const auto mm = static_cast<std::int64_t>(m);
    Complex sum{};
    for (std::int64_t k = -(mm - 1); k <= mm - 1; ++k) {
        const double taper = static_cast<double>(mm - std::abs(k)) / static_cast<double>(mm);
        sum += weights(k) * (taper * rank_cumulant(window, k, tau1, tau2));
    }
    return sum / kTwoPi;
}

Complex iid_truth(double lambda, double tau1, double tau2) {
    return {lambda / kTwoPi * (std::min(tau1, tau2) - tau1 * tau2), 0.0};
}

SpectralSurface iid_truth_surface(const FrequencyGrid& frequencies, const QuantileGrid& quantiles) {
    SpectralSurface surface(frequencies, quantiles);
    for (std::size_t ell = 0; ell < frequencies.size(); ++ell) {
        for (std::size_t i = 0; i < quantiles.size(); ++i) {
            for (std::size_t j = 0; j < quantiles.size(); ++j) {
                surface.at(ell, i, j) = iid_truth(frequencies.lambda(ell), quantiles[i], quantiles[j]);
            }
        }
    }
    return surface;
}

SpectralSurface monte_carlo_truth(const ModelSpec& model, std::size_t n, std::size_t replications,
                                  const FrequencyGrid& frequencies, const QuantileGrid& quantiles,
                                  std::uint64_t seed, std::size_t threads) {
    if (replications < 1) throw std::invalid_argument("monte_carlo_truth needs at least one replication");
    // Fixed-size chunks summed sequentially, then combined in chunk order: thread-count independent.
    constexpr std::size_t kChunk = 32;
    const std::size_t chunks = (replications + kChunk - 1) / kChunk;
    std::vector<SpectralSurface> partial(chunks, SpectralSurface(frequencies, quantiles));
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(replications, (c + 1) * kChunk);
        for (std::size_t r = c * kChunk; r < end; ++r) {
            const RealSeries series = generate(model, n, derive_seed(seed, r));
            partial[c] += integrated_spectrum(series.values(), frequencies, quantiles);
        }
    });
    SpectralSurface mean(frequencies, quantiles);
    for (const auto& p : partial) mean += p;
    mean *= 1.0 / static_cast<double>(replications);
    return mean;
}

}  // namespace icspec
