#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "icspec/core.hpp"
#include "icspec/ranks.hpp"
#include "oracles.hpp"

using namespace icspec;

TEST_CASE("RealSeries rejects short or non-finite input") {
    CHECK_THROWS_AS(RealSeries({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(RealSeries({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(RealSeries({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
    const RealSeries x({1.0, 2.0, 3.0});
    CHECK(x.size() == 3);
    CHECK(x.window(1, 2)[0] == 2.0);
    CHECK_THROWS_AS((void)x.window(2, 2), std::out_of_range);
    CHECK_THROWS_AS((void)x.window(0, 0), std::out_of_range);
}

TEST_CASE("QuantileGrid validation and lookup") {
    CHECK_THROWS_AS(QuantileGrid({}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileGrid({0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileGrid({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileGrid({0.5, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileGrid({0.5, 0.5}), std::invalid_argument);

    const auto grid = QuantileGrid::uniform(8);
    REQUIRE(grid.size() == 7);
    CHECK(grid[0] == 0.125);
    CHECK(grid[6] == 0.875);
    CHECK(grid.index_of(0.5) == 3);
    CHECK(grid.contains(0.375));
    CHECK_FALSE(grid.contains(0.3));
    CHECK_THROWS_AS((void)grid.index_of(0.3), std::out_of_range);

    const auto tails = QuantileGrid::fractions(16, 2, 4);
    REQUIRE(tails.size() == 3);
    CHECK(tails[0] == 0.125);
    CHECK(tails[2] == 0.25);
    CHECK_THROWS_AS((void)QuantileGrid::fractions(16, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)QuantileGrid::fractions(16, 4, 16), std::invalid_argument);
}

TEST_CASE("FrequencyGrid cutoffs are exact integers") {
    const FrequencyGrid grid(32);
    CHECK(grid.size() == 17);
    CHECK(grid.lambda(16) == doctest::Approx(kPi));
    CHECK(grid.last_included(0, 512) == 0);
    CHECK(grid.last_included(1, 512) == 16);
    CHECK(grid.last_included(16, 512) == 256);
    // ell m / d = 3 * 10 / 32 = 0.9375 -> no frequency yet
    CHECK(grid.last_included(3, 10) == 0);
    CHECK(grid.last_included(4, 10) == 1);
    CHECK(FrequencyGrid(2).last_included(1, 2) == 1);
    CHECK(FrequencyGrid(1).size() == 1);
    CHECK_THROWS_AS(FrequencyGrid(0), std::invalid_argument);
}

TEST_CASE("SpectralSurface arithmetic requires matching grids") {
    SpectralSurface a(FrequencyGrid(4), QuantileGrid({0.5}));
    SpectralSurface b(FrequencyGrid(4), QuantileGrid({0.5}));
    a.at(1, 0, 0) = Complex(1.0, 2.0);
    b.at(1, 0, 0) = Complex(3.0, -1.0);
    a += b;
    a *= 0.5;
    CHECK(a.at(1, 0, 0) == Complex(2.0, 0.5));
    SpectralSurface c(FrequencyGrid(8), QuantileGrid({0.5}));
    CHECK_THROWS_AS(a += c, std::invalid_argument);
    CHECK(a.entries().size() == 3);
}

TEST_CASE("part and weight names round-trip") {
    CHECK(parse_part("re") == Part::Real);
    CHECK(parse_part("im") == Part::Imag);
    CHECK_THROWS_AS((void)parse_part("abs"), std::invalid_argument);
    for (auto kind : {WeightKind::S1, WeightKind::S2, WeightKind::S3, WeightKind::S4, WeightKind::S5}) {
        CHECK(parse_weight(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS((void)parse_weight("s6"), std::invalid_argument);
}

TEST_CASE("InferenceConfig validation") {
    InferenceConfig cfg;
    cfg.b = 128;
    CHECK_NOTHROW(cfg.validate(512));
    CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
    cfg.b = 1;
    CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
    cfg.b = 32;
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
}

TEST_CASE("rule_of_thumb_block") {
    CHECK(rule_of_thumb_block(100) == 32);
    CHECK(rule_of_thumb_block(200) == 64);
    CHECK(rule_of_thumb_block(1024) == 128);
    CHECK(rule_of_thumb_block(std::size_t{1} << 30) == 256);
    CHECK(rule_of_thumb_block(32) == 16);
    CHECK_THROWS_AS((void)rule_of_thumb_block(31), std::invalid_argument);
    // boundary of 2^j <= 2 n^(2/3): (2^5)^3 = 32768 <= n^2 first holds at n = 182
    CHECK(rule_of_thumb_block(181) == 32);
    CHECK(rule_of_thumb_block(182) == 64);
}

TEST_CASE("ecdf examples") {
    const std::vector<double> x{3.0, 1.0, 2.0};
    const auto u = empirical_cdf_at_points(x);
    CHECK(u[0] == 1.0);
    CHECK(u[1] == doctest::Approx(1.0 / 3));
    CHECK(u[2] == doctest::Approx(2.0 / 3));
    CHECK(empirical_cdf_at_points(std::vector<double>{5.0}) == std::vector<double>{1.0});
    CHECK(empirical_cdf_at_points(std::vector<double>{1.0, 1.0}) == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS((void)ecdf_counts(std::vector<double>{}), std::invalid_argument);
    CHECK(has_ties(std::vector<double>{1.0, 2.0, 1.0}));
    CHECK_FALSE(has_ties(std::vector<double>{1.0, 2.0, 3.0}));
}

TEST_CASE("ecdf matches the double loop, including ties") {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 1 + rep % 40;
        std::vector<double> x(m);
        for (auto& v : x) v = std::floor(rng.uniform() * (rep % 2 == 0 ? 5.0 : 1e6));
        const auto fast = empirical_cdf_at_points(x);
        const auto slow = oracle::ecdf(x);
        for (std::size_t t = 0; t < m; ++t) CHECK(fast[t] == slow[t]);
    }
}

TEST_CASE("indicator matrix examples") {
    const auto m1 = indicator_matrix(std::vector<double>{2.0, 1.0}, QuantileGrid({0.5}));
    CHECK(m1.bit(0, 0) == 0);
    CHECK(m1.bit(1, 0) == 1);

    const std::vector<double> w{0.3, -1.0, 2.5, 0.7, 1.1};
    const auto low = indicator_matrix(w, QuantileGrid({0.1}));
    CHECK(low.column_sum(0) == 0);

    const auto high = indicator_matrix(std::vector<double>{4.0, 1.0, 3.0, 2.0}, QuantileGrid({1.0 - 1e-12}), 7);
    CHECK(high.column_sum(0) == 3);
    CHECK(high.start() == 7);
    CHECK(high.rows() == 4);
    CHECK(high.columns() == 1);
}

TEST_CASE("indicator column sums equal floor(m tau) for distinct values") {
    Rng rng(5);
    const auto grid = QuantileGrid::uniform(16);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 2 + rep;
        std::vector<double> x(m);
        for (auto& v : x) v = rng.normal();
        const auto matrix = indicator_matrix(x, grid);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            CHECK(matrix.column_sum(j) == static_cast<std::size_t>(std::floor(static_cast<double>(m) * grid[j] + 1e-9)));
        }
    }
}
