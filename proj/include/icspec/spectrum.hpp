#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icspec/core.hpp"

namespace icspec {

struct ModelSpec;

/**
 * @brief DFT of one indicator column at the Fourier frequencies 2*pi*s/m, s = 1..m-1.
 *
 * Computed by FFT of length m. Entry k of the result holds s = k + 1.
 */
[[nodiscard]] std::vector<Complex> rank_dft(std::span<const std::uint8_t> column);

/**
 * @brief Copula rank periodogram of a window at s = 1..m-1.
 *
 * I(2 pi s/m) = d^{tau1}(2 pi s/m) d^{tau2}(-2 pi s/m) / (2 pi m), with indicators taken
 * from the window-local empirical cdf. Entry k holds s = k + 1.
 */
[[nodiscard]] std::vector<Complex> cr_periodogram(std::span<const double> window, double tau1, double tau2);

/**
 * @brief Integrated copula rank spectrum of a window on a full (frequency, quantile, quantile) grid.
 *
 * F(lambda; tau1, tau2) = (2 pi/m) sum_{s=1}^{m-1} I{2 pi s/m <= lambda} I^{tau1,tau2}(2 pi s/m).
 * One FFT per quantile level; the cutoff s/m <= l/d is an exact integer comparison.
 */
[[nodiscard]] SpectralSurface integrated_spectrum(std::span<const double> window,
                                                  const FrequencyGrid& frequencies,
                                                  const QuantileGrid& quantiles);

/// Direct-sum weights w(k) = (2 pi/n) sum_{s=1}^{n-1} I{2 pi s/n <= lambda} e^{-i k 2 pi s/n}, |k| <= n-1.
class LagWeights {
public:
    LagWeights(std::size_t n, const FrequencyGrid& frequencies, std::size_t ell);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] Complex operator()(std::int64_t k) const;

private:
    std::size_t n_;
    std::vector<Complex> values_;  // k = -(n-1) .. n-1
};

/**
 * @brief Rank-based lag-k copula cumulant, centred at (tau1, tau2).
 *
 * (1/(m-|k|)) sum_t (I{F(X_{t+k}) <= tau1} - tau1)(I{F(X_t) <= tau2} - tau2) over all t with
 * both indices in the window.
 * @throws std::out_of_range when |k| >= m
 */
[[nodiscard]] double rank_cumulant(std::span<const double> window, std::int64_t k, double tau1, double tau2);

/// The same estimator written as (1/2pi) sum_k w(k) ((m-|k|)/m) gamma_k; O(m^2), no FFT.
[[nodiscard]] Complex integrated_spectrum_lagform(std::span<const double> window, const FrequencyGrid& frequencies,
                                                  std::size_t ell, double tau1, double tau2);

/// Integrated copula spectrum of an i.i.d. sequence: (lambda/2pi)(min(tau1,tau2) - tau1 tau2).
[[nodiscard]] Complex iid_truth(double lambda, double tau1, double tau2);
[[nodiscard]] SpectralSurface iid_truth_surface(const FrequencyGrid& frequencies, const QuantileGrid& quantiles);

/**
 * @brief Average of R estimates from independent model draws of length n.
 *
 * Replication r uses the stream derive_seed(seed, r); the sum is taken in replication order,
 * so the result does not depend on the thread count.
 */
[[nodiscard]] SpectralSurface monte_carlo_truth(const ModelSpec& model, std::size_t n, std::size_t replications,
                                                const FrequencyGrid& frequencies, const QuantileGrid& quantiles,
                                                std::uint64_t seed, std::size_t threads = 1);

}  // namespace icspec
