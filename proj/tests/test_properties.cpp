#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "icspec/inference.hpp"
#include "icspec/random.hpp"
#include "icspec/spectrum.hpp"
#include "icspec/subsample.hpp"
#include "icspec/weights.hpp"

using namespace icspec;

namespace {

constexpr int kCases = 1000;

// Random length in [lo, hi], with rounded values on every fourth case so that ties occur.
std::vector<double> random_series(Rng& rng, std::size_t lo, std::size_t hi) {
    const auto n = lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
    const bool tied = rng.uniform() < 0.25;
    std::vector<double> x(n);
    for (auto& v : x) v = tied ? std::round(2.0 * rng.normal()) : rng.normal();
    return x;
}

bool same(const SpectralSurface& a, const SpectralSurface& b) {
    return std::equal(a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end());
}

}  // namespace

TEST_CASE("surface conjugate symmetry and real nondecreasing diagonal") {
    Rng rng(101);
    const FrequencyGrid frequencies(8);
    const auto quantiles = QuantileGrid::uniform(4);
    for (int c = 0; c < kCases; ++c) {
        const auto x = random_series(rng, 4, 40);
        const auto s = integrated_spectrum(x, frequencies, quantiles);
        for (std::size_t l = 0; l < frequencies.size(); ++l) {
            for (std::size_t i = 0; i < quantiles.size(); ++i) {
                CHECK(std::abs(s.at(l, i, i).imag()) <= 1e-15);
                CHECK(s.at(l, i, i).real() >= -1e-15);
                if (l > 0) CHECK(s.at(l, i, i).real() >= s.at(l - 1, i, i).real() - 1e-15);
                for (std::size_t j = 0; j < quantiles.size(); ++j) {
                    CHECK(std::abs(s.at(l, i, j) - std::conj(s.at(l, j, i))) <= 1e-15);
                }
            }
        }
    }
}

TEST_CASE("surface depends on the data only through ranks") {
    Rng rng(102);
    const FrequencyGrid frequencies(8);
    const auto quantiles = QuantileGrid::uniform(4);
    for (int c = 0; c < kCases; ++c) {
        const auto x = random_series(rng, 4, 40);
        const double shift = 10.0 * rng.normal();
        const double scale = 0.1 + 5.0 * rng.uniform();
        std::vector<double> shifted(x.size()), transformed(x.size());
        for (std::size_t t = 0; t < x.size(); ++t) {
            shifted[t] = x[t] + shift;
            transformed[t] = std::exp(scale * x[t]);
        }
        const auto base = integrated_spectrum(x, frequencies, quantiles);
        CHECK(same(base, integrated_spectrum(shifted, frequencies, quantiles)));
        CHECK(same(base, integrated_spectrum(transformed, frequencies, quantiles)));
    }
}

TEST_CASE("frequency-sum and lag forms agree") {
    Rng rng(103);
    const FrequencyGrid frequencies(8);
    for (int c = 0; c < kCases; ++c) {
        const auto x = random_series(rng, 2, 30);
        const double tau1 = rng.uniform();
        const double tau2 = rng.uniform();
        const auto ell = static_cast<std::size_t>(rng.uniform() * static_cast<double>(frequencies.size()));
        const auto levels = tau1 == tau2 ? std::vector<double>{tau1} : std::vector<double>{std::min(tau1, tau2), std::max(tau1, tau2)};
        const auto s = integrated_spectrum(x, frequencies, QuantileGrid(levels));
        const std::size_t i = tau1 <= tau2 ? 0 : 1;
        const Complex direct = tau1 == tau2 ? s.at(ell, 0, 0) : s.at(ell, i, 1 - i);
        const Complex lag = integrated_spectrum_lagform(x, frequencies, ell, tau1, tau2);
        CHECK(std::abs(direct - lag) <= 1e-12);
    }
}

TEST_CASE("weight bounds") {
    Rng rng(104);
    for (int c = 0; c < 100 * kCases; ++c) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        const double s1 = weight(WeightKind::S1, a, b);
        const double s2 = weight(WeightKind::S2, a, b);
        const double s3 = weight(WeightKind::S3, a, b);
        const double s5 = weight(WeightKind::S5, a, b);
        REQUIRE(s3 > 0.0);
        REQUIRE(s3 <= s1 + 1e-15);
        REQUIRE(s3 <= s2);
        REQUIRE(s2 <= 1.0);
        REQUIRE(s1 <= 0.25);
        REQUIRE(s5 * s5 == doctest::Approx(s3));
        REQUIRE(weight(WeightKind::S4, a, b) == 1.0);
        REQUIRE(weight(WeightKind::S1, a, b) == doctest::Approx(weight(WeightKind::S1, b, a)).epsilon(1e-15));
    }
}

TEST_CASE("time reversal conjugates the surface and leaves T_TR unchanged") {
    Rng rng(105);
    const auto set = product_grid(FrequencyGrid(8), QuantileGrid::uniform(4));
    for (int c = 0; c < kCases; ++c) {
        auto x = random_series(rng, 4, 40);
        const double forward = t_tr(RealSeries(x), set, WeightKind::S1);
        std::reverse(x.begin(), x.end());
        CHECK(t_tr(RealSeries(x), set, WeightKind::S1) == doctest::Approx(forward).epsilon(1e-12));
    }
}

TEST_CASE("full-length window reproduces the sample statistics") {
    Rng rng(106);
    const FrequencyGrid frequencies(8);
    const auto quantiles = QuantileGrid::uniform(4);
    const auto set = product_grid(frequencies, quantiles);
    const auto eq_set = product_grid(frequencies, QuantileGrid::fractions(16, 2, 4));
    for (int c = 0; c < kCases; ++c) {
        const RealSeries x(random_series(rng, 4, 40));
        CHECK(same(subsample_surface(x, x.size(), 0, frequencies, quantiles),
                   integrated_spectrum(x.values(), frequencies, quantiles)));
        CHECK(t_tr_sub(x, x.size(), 0, set, WeightKind::S4, true) == t_tr(x, set, WeightKind::S4));
        CHECK(t_eq_sub(x, x.size(), 0, eq_set, WeightKind::S3, true) == t_eq(x, eq_set, WeightKind::S3));
        CHECK(fpc_factor(x.size(), x.size()) == 1.0);
    }
}

TEST_CASE("empirical quantile is an order statistic") {
    Rng rng(107);
    for (int c = 0; c < kCases; ++c) {
        const auto stats = random_series(rng, 1, 60);
        const double level = rng.uniform();
        auto sorted = stats;
        std::sort(sorted.begin(), sorted.end());
        const auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(stats.size())));
        const double q = empirical_quantile(stats, level);
        CHECK(q == sorted[std::max<std::size_t>(rank, 1) - 1]);
        const auto below = std::count_if(stats.begin(), stats.end(), [&](double v) { return v <= q; });
        CHECK(static_cast<double>(below) / static_cast<double>(stats.size()) >= level);
    }
}

TEST_CASE("p-values lie in the unit interval and are monotone in the statistic") {
    Rng rng(108);
    for (int c = 0; c < kCases; ++c) {
        const auto stats = random_series(rng, 1, 50);
        const double a = rng.normal();
        const double b = a + std::abs(rng.normal());
        const double pa = exceedance_p_value(stats, a);
        const double pb = exceedance_p_value(stats, b);
        CHECK(pa >= 0.0);
        CHECK(pa <= 1.0);
        CHECK(pb <= pa);
    }
}
