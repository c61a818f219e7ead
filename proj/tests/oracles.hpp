#pragma once
// Slow definitional implementations used as independent references in the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "icspec/core.hpp"
#include "icspec/models.hpp"
#include "icspec/random.hpp"
#include "icspec/weights.hpp"

namespace oracle {

using icspec::Complex;
using icspec::kTwoPi;

// Double loop: ecdf value of each point within the window.
inline std::vector<double> ecdf(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        std::size_t count = 0;
        for (double y : x) count += y <= x[t] ? 1 : 0;
        out[t] = static_cast<double>(count) / static_cast<double>(x.size());
    }
    return out;
}

inline std::vector<double> indicator(std::span<const double> x, double tau) {
    const auto u = ecdf(x);
    std::vector<double> out(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) out[t] = u[t] <= tau ? 1.0 : 0.0;
    return out;
}

// Direct O(m) evaluation of the indicator DFT at Fourier index s.
inline Complex dft(const std::vector<double>& column, std::size_t s) {
    const std::size_t m = column.size();
    Complex sum = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double angle = -kTwoPi * static_cast<double>((s * t) % m) / static_cast<double>(m);
        sum += column[t] * Complex(std::cos(angle), std::sin(angle));
    }
    return sum;
}

// (1/m^2) sum over 1 <= s <= m-1 with 2 pi s / m <= lambda, evaluated with a floating comparison
// widened by a tolerance so that it agrees with the exact integer cutoff.
inline Complex integrated(std::span<const double> x, double lambda, double tau1, double tau2) {
    const std::size_t m = x.size();
    const auto c1 = indicator(x, tau1);
    const auto c2 = indicator(x, tau2);
    Complex sum = 0.0;
    for (std::size_t s = 1; s < m; ++s) {
        if (kTwoPi * static_cast<double>(s) / static_cast<double>(m) > lambda + 1e-12) break;
        sum += dft(c1, s) * std::conj(dft(c2, s));
    }
    return sum / (static_cast<double>(m) * static_cast<double>(m));
}

// Definitional lag-k rank cumulant: mean over the m-|k| valid t of (I1(t+k) - tau1)(I2(t) - tau2).
inline double cumulant(std::span<const double> x, std::int64_t k, double tau1, double tau2) {
    const auto c1 = indicator(x, tau1);
    const auto c2 = indicator(x, tau2);
    const auto m = static_cast<std::int64_t>(x.size());
    double sum = 0.0;
    for (std::int64_t t = 0; t < m; ++t) {
        const std::int64_t u = t + k;
        if (u < 0 || u >= m) continue;
        sum += (c1[static_cast<std::size_t>(u)] - tau1) * (c2[static_cast<std::size_t>(t)] - tau2);
    }
    return sum / static_cast<double>(m - (k < 0 ? -k : k));
}

inline double weight(icspec::WeightKind kind, double a, double b) {
    switch (kind) {
        case icspec::WeightKind::S1: return std::sqrt(a * (1 - a) * b * (1 - b));
        case icspec::WeightKind::S2: return std::max(a, b) - a * b;
        case icspec::WeightKind::S3: return std::min(a, b) - a * b;
        case icspec::WeightKind::S4: return 1.0;
        case icspec::WeightKind::S5: return std::sqrt(std::min(a, b) - a * b);
    }
    return 1.0;
}

inline double t_tr(std::span<const double> x, std::int64_t d, const std::vector<double>& levels,
                   icspec::WeightKind kind) {
    double best = 0.0;
    for (std::int64_t ell = 0; ell <= d / 2; ++ell) {
        const double lambda = kTwoPi * static_cast<double>(ell) / static_cast<double>(d);
        for (double a : levels) {
            for (double b : levels) {
                best = std::max(best, std::abs(integrated(x, lambda, a, b).imag()) / oracle::weight(kind, a, b));
            }
        }
    }
    return std::sqrt(static_cast<double>(x.size())) * best;
}

inline double t_eq(std::span<const double> x, std::int64_t d, const std::vector<double>& levels,
                   icspec::WeightKind kind) {
    double best = 0.0;
    for (std::int64_t ell = 0; ell <= d / 2; ++ell) {
        const double lambda = kTwoPi * static_cast<double>(ell) / static_cast<double>(d);
        for (double a : levels) {
            for (double b : levels) {
                const Complex diff = integrated(x, lambda, a, b) - integrated(x, lambda, 1 - a, 1 - b);
                best = std::max(best, std::abs(diff) / oracle::weight(kind, a, b));
            }
        }
    }
    return std::sqrt(static_cast<double>(x.size())) * best;
}

// sup over all real (x, y) of |F(x,y) - F(y,x)| for the lag-one pairs, checked on every pair of
// observed values (the empirical cdfs only jump there).
inline double t_bs(std::span<const double> x) {
    const std::size_t n = x.size();
    double best = 0.0;
    for (double a : x) {
        for (double b : x) {
            double forward = 0.0;
            double backward = 0.0;
            for (std::size_t t = 0; t + 1 < n; ++t) {
                forward += (x[t] <= a && x[t + 1] <= b) ? 1.0 : 0.0;
                backward += (x[t] <= b && x[t + 1] <= a) ? 1.0 : 0.0;
            }
            best = std::max(best, std::abs(forward - backward));
        }
    }
    return best / static_cast<double>(n - 1);
}

inline std::vector<double> normal_series(std::size_t n, std::uint64_t seed) {
    icspec::Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

}  // namespace oracle
