#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "icspec/models.hpp"
#include "icspec/ranks.hpp"

using namespace icspec;

namespace {

double mean(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size()); }

double correlation(std::span<const double> a, std::span<const double> b) {
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        sab += (a[t] - ma) * (b[t] - mb);
        saa += (a[t] - ma) * (a[t] - ma);
        sbb += (b[t] - mb) * (b[t] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double rank_correlation(std::span<const double> a, std::span<const double> b) {
    const auto ra = empirical_cdf_at_points(a);
    const auto rb = empirical_cdf_at_points(b);
    return correlation(ra, rb);
}

double lag1_rank_correlation(std::span<const double> x) {
    return rank_correlation(x.subspan(0, x.size() - 1), x.subspan(1));
}

double ks_uniform(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - x[i]), std::abs(x[i] - static_cast<double>(i) / n)});
    }
    return d;
}

}  // namespace

TEST_CASE("catalog contents") {
    const auto& catalog = model_catalog();
    CHECK(catalog.size() == 48);
    CHECK(find_model("M8a").param == doctest::Approx(1.0 / 0.15));
    CHECK(find_model("M8g").param == doctest::Approx(1.0 / 0.99));
    CHECK(find_model("M9c").param == doctest::Approx(0.43));
    CHECK(find_model("M6b").param == 0.5);
    CHECK(clayton_from_kendall(find_model("M13b").param) == doctest::Approx(2.0));
    CHECK(gumbel_from_kendall(0.5) == doctest::Approx(2.0));
    CHECK(clayton_from_kendall(0.5) == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)find_model("M16"), std::invalid_argument);
    for (const auto& spec : catalog) CHECK_NOTHROW(spec.validate());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((ModelSpec{ModelFamily::M6, 1.0, "x"}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{ModelFamily::M8, 0.5, "x"}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{ModelFamily::M9, 1.5, "x"}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelSpec{ModelFamily::M12, 1.0, "x"}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((void)generate(find_model("M0"), 1, 0), std::invalid_argument);
}

TEST_CASE("generation is deterministic in (spec, n, seed)") {
    for (const auto& spec : model_catalog()) {
        const auto a = generate(spec, 64, 99);
        const auto b = generate(spec, 64, 99);
        CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    }
    const auto c = generate(find_model("M3"), 64, 100);
    const auto d = generate(find_model("M3"), 64, 101);
    CHECK_FALSE(std::equal(c.values().begin(), c.values().end(), d.values().begin()));
}

TEST_CASE("M0 moments") {
    CHECK(generate(find_model("M0"), 4, 1).size() == 4);
    const auto x = generate(find_model("M0"), 100000, 2);
    const double m = mean(x.values());
    double var = 0.0;
    for (double v : x.values()) var += (v - m) * (v - m);
    var /= static_cast<double>(x.size() - 1);
    CHECK(std::abs(m) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("M6a lag-one autocorrelation") {
    const auto x = generate(find_model("M6a"), 100000, 3);
    const auto v = x.values();
    CHECK(std::abs(correlation(v.subspan(0, v.size() - 1), v.subspan(1)) - 0.3) < 0.02);
}

TEST_CASE("M8 with gamma = 1 is serially independent") {
    const ModelSpec spec{ModelFamily::M8, 1.0, "M8"};
    const auto x = generate(spec, 100000, 4);
    CHECK(std::abs(lag1_rank_correlation(x.values())) < 0.02);
}

TEST_CASE("M10 interleaves independent chains") {
    const auto x = generate(find_model("M10a"), 100000, 5);
    std::vector<double> odd, even;
    for (std::size_t t = 0; t + 1 < x.size(); t += 2) {
        odd.push_back(x[t]);
        even.push_back(x[t + 1]);
    }
    CHECK(std::abs(rank_correlation(odd, even)) < 0.02);
    // each subsequence is a dependent chain
    CHECK(lag1_rank_correlation(odd) > 0.3);
}

TEST_CASE("copula chain marginals are uniform") {
    for (const char* name : {"M8a", "M9a", "M12b", "M13c", "M14", "M15"}) {
        CAPTURE(name);
        const auto x = generate(find_model(name), 100000, 6);
        std::vector<double> v(x.values().begin(), x.values().end());
        CHECK(ks_uniform(v) < 0.01);
    }
}

TEST_CASE("GARCH and EGARCH stay finite") {
    for (const char* name : {"M4", "M5"}) {
        const auto x = generate(find_model(name), 1000000, 7);
        CHECK(std::all_of(x.values().begin(), x.values().end(), [](double v) { return std::isfinite(v); }));
    }
}

TEST_CASE("copula cdfs") {
    for (auto family : {CopulaFamily::AsymmetricGumbel, CopulaFamily::Gumbel, CopulaFamily::Clayton}) {
        const double param = 2.0;
        CHECK(copula_cdf(family, param, 0.0, 0.7) == 0.0);
        CHECK(copula_cdf(family, param, 1.0, 0.7) == doctest::Approx(0.7));
        CHECK(copula_cdf(family, param, 0.4, 1.0) == doctest::Approx(0.4));
        const double c = copula_cdf(family, param, 0.4, 0.7);
        CHECK(c >= std::max(0.0, 0.4 + 0.7 - 1.0));
        CHECK(c <= 0.4);
    }
    CHECK(copula_cdf(CopulaFamily::Gumbel, 1.0, 0.3, 0.6) == doctest::Approx(0.18));
    CHECK_THROWS_AS((void)copula_cdf(CopulaFamily::ZeroCirculation, 1.0, 0.3, 0.6), std::invalid_argument);
}

TEST_CASE("conditional inverse") {
    const auto independent = build_copula_grid(CopulaFamily::Gumbel, 1.0, 1000);
    for (double v : {0.1, 0.5, 0.9}) {
        for (double u : {0.05, 0.3, 0.77}) CHECK(std::abs(conditional_inverse(independent, u, v) - u) <= 1e-3);
    }
    const auto uniform_mix = build_copula_grid(CopulaFamily::ZeroCirculation, 1.0, 1000);
    for (double u : {0.05, 0.3, 0.77}) CHECK(std::abs(conditional_inverse(uniform_mix, u, 0.4) - u) <= 1e-3);

    const auto tight = build_copula_grid(CopulaFamily::Gumbel, 50.0, 1000);
    for (double v : {0.2, 0.5, 0.8}) CHECK(std::abs(conditional_inverse(tight, 0.5, v) - v) < 0.01);

    const auto nelsen3 = build_copula_grid(CopulaFamily::Nelsen3, 0.0, 1000);
    const auto row = nelsen3.row(nelsen3.nearest_row(0.1));
    CHECK(row[250] == doctest::Approx(0.5).epsilon(0.01));
    CHECK(row.back() == doctest::Approx(1.0));
    CHECK(row.front() >= 0.0);
    CHECK(std::is_sorted(row.begin(), row.end()));
}

TEST_CASE("copula grid rows are conditional cdfs") {
    for (auto [family, param] : {std::pair{CopulaFamily::AsymmetricGumbel, 3.0}, std::pair{CopulaFamily::ZeroCirculation, 0.4},
                                 std::pair{CopulaFamily::Clayton, 2.0}, std::pair{CopulaFamily::Nelsen6, 0.0}}) {
        const auto grid = build_copula_grid(family, param, 200);
        for (std::size_t h = 0; h < grid.size(); h += 17) {
            const auto row = grid.row(h);
            CHECK(std::is_sorted(row.begin(), row.end()));
            CHECK(row.back() == doctest::Approx(1.0));
        }
    }
}
