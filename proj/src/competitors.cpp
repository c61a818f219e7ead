#include "icspec/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace icspec {
namespace {

double bs_statistic(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> distinct(x.begin(), x.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const std::size_t k = distinct.size();

    // H[a][b] = #{t : x_t <= v_a, x_{t+1} <= v_b} over the distinct values v_1 < ... < v_k
    std::vector<std::size_t> level(n);
    for (std::size_t t = 0; t < n; ++t) {
        level[t] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), x[t]) - distinct.begin());
    }
    std::vector<long> h(k * k, 0);
    for (std::size_t t = 0; t + 1 < n; ++t) ++h[level[t] * k + level[t + 1]];
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            long value = h[a * k + b];
            if (a > 0) value += h[(a - 1) * k + b];
            if (b > 0) value += h[a * k + b - 1];
            if (a > 0 && b > 0) value -= h[(a - 1) * k + b - 1];
            h[a * k + b] = value;
        }
    }
    long best = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) best = std::max(best, std::labs(h[a * k + b] - h[b * k + a]));
    }
    return static_cast<double>(best) / static_cast<double>(n - 1);
}

}  // namespace

std::string_view to_string(CompetitorKind kind) noexcept {
    switch (kind) {
        case CompetitorKind::RR: return "RR";
        case CompetitorKind::CCK: return "CCK";
        case CompetitorKind::PP: return "PP";
        case CompetitorKind::BS: return "BS";
    }
    return "RR";
}

CompetitorKind parse_competitor(std::string_view text) {
    if (text == "RR" || text == "rr") return CompetitorKind::RR;
    if (text == "CCK" || text == "cck") return CompetitorKind::CCK;
    if (text == "PP" || text == "pp") return CompetitorKind::PP;
    if (text == "BS" || text == "bs") return CompetitorKind::BS;
    throw std::invalid_argument("unknown competitor statistic '" + std::string(text) + "'");
}

double competitor_statistic(CompetitorKind kind, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("competitor statistics need at least two observations");
    const double scale = 1.0 / static_cast<double>(n - 1);
    double sum = 0.0;
    switch (kind) {
        case CompetitorKind::RR:
            for (std::size_t t = 0; t + 1 < n; ++t) sum += x[t + 1] * x[t + 1] * x[t] - x[t + 1] * x[t] * x[t];
            return scale * sum;
        case CompetitorKind::CCK:
            for (std::size_t t = 0; t + 1 < n; ++t) {
                const double step = x[t + 1] - x[t];
                sum += step / (1.0 + step * step);
            }
            return scale * sum;
        case CompetitorKind::PP:
            for (std::size_t t = 0; t + 1 < n; ++t) sum += x[t + 1] > x[t] ? 1.0 : 0.0;
            return scale * sum - 0.5;
        case CompetitorKind::BS:
            return bs_statistic(x);
    }
    return 0.0;
}

NullResampler iid_permutation_resampler() {
    return [](std::span<const double> series, Rng& rng) {
        std::vector<double> copy(series.begin(), series.end());
        // Fisher-Yates with our own uniform draws so the permutation is platform independent
        for (std::size_t i = copy.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
            std::swap(copy[i - 1], copy[std::min(j, i - 1)]);
        }
        return copy;
    };
}

double resampled_p_value(CompetitorKind kind, std::span<const double> series, const NullResampler& resampler,
                         std::size_t resamples, std::uint64_t seed) {
    if (resamples == 0) throw std::invalid_argument("resampled_p_value needs at least one resample");
    const double observed = std::abs(competitor_statistic(kind, series));
    Rng rng(seed);
    std::size_t extreme = 0;
    for (std::size_t r = 0; r < resamples; ++r) {
        const auto draw = resampler(series, rng);
        if (std::abs(competitor_statistic(kind, draw)) >= observed) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(resamples);
}

}  // namespace icspec
