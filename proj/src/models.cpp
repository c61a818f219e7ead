#include "icspec/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "icspec/random.hpp"

namespace icspec {
namespace {

constexpr std::array<double, 7> kLadder = {0.15, 0.29, 0.43, 0.57, 0.71, 0.85, 0.99};
constexpr std::array<double, 3> kAr = {0.3, 0.5, 0.7};
constexpr std::array<double, 3> kKendall = {0.25, 0.5, 0.75};

ModelSpec make(ModelFamily family, double param, std::string name) {
    ModelSpec spec;
    spec.family = family;
    spec.param = param;
    spec.name = std::move(name);
    return spec;
}

std::vector<ModelSpec> build_catalog() {
    std::vector<ModelSpec> catalog;
    const auto base = [](ModelFamily f) { return std::string(to_string(f)); };
    for (auto f : {ModelFamily::M0, ModelFamily::M1, ModelFamily::M2, ModelFamily::M3, ModelFamily::M4,
                   ModelFamily::M5}) {
        catalog.push_back(make(f, 0.0, base(f)));
    }
    for (auto f : {ModelFamily::M6, ModelFamily::M7}) {
        for (std::size_t j = 0; j < kAr.size(); ++j) {
            catalog.push_back(make(f, kAr[j], base(f) + static_cast<char>('a' + j)));
        }
    }
    for (auto f : {ModelFamily::M8, ModelFamily::M9, ModelFamily::M10, ModelFamily::M11}) {
        const bool gumbel = f == ModelFamily::M8 || f == ModelFamily::M10;
        for (std::size_t i = 0; i < kLadder.size(); ++i) {
            // the ladder lists 1/gamma for the Gumbel chains and lambda for the circulation chains
            const double param = gumbel ? 1.0 / kLadder[i] : kLadder[i];
            catalog.push_back(make(f, param, base(f) + static_cast<char>('a' + i)));
        }
    }
    for (auto f : {ModelFamily::M12, ModelFamily::M13}) {
        for (std::size_t j = 0; j < kKendall.size(); ++j) {
            catalog.push_back(make(f, kKendall[j], base(f) + static_cast<char>('a' + j)));
        }
    }
    catalog.push_back(make(ModelFamily::M14, 0.0, "M14"));
    catalog.push_back(make(ModelFamily::M15, 0.0, "M15"));
    return catalog;
}

// Boundary values C(u,0) = C(0,v) = 0, C(u,1) = u, C(1,v) = v hold for every copula.
bool boundary(double u, double v, double& value) {
    if (u <= 0.0 || v <= 0.0) {
        value = 0.0;
        return true;
    }
    if (u >= 1.0) {
        value = std::min(v, 1.0);
        return true;
    }
    if (v >= 1.0) {
        value = u;
        return true;
    }
    return false;
}

struct Band {
    double v_lo, v_hi;  // rows v in [v_lo, v_hi)
    double u_lo, u_hi;  // density support u in [u_lo, u_hi)
};

// Indicator supports of the piecewise-constant densities; each v-row of a family has the
// same total u-length, and the density height is its reciprocal.
std::vector<Band> bands(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::ZeroCirculation:
            return {{0.0, 0.25, 0.25, 0.5}, {0.25, 0.5, 0.75, 1.0}, {0.5, 0.75, 0.0, 0.25}, {0.75, 1.0, 0.5, 0.75}};
        case CopulaFamily::Nelsen3:
            return {{0.0, 0.25, 0.0, 0.25},  {0.0, 0.25, 0.75, 1.0}, {0.25, 0.5, 0.5, 1.0},
                    {0.5, 0.75, 0.25, 0.75}, {0.75, 1.0, 0.0, 0.5}};
        case CopulaFamily::Nelsen6:
            return {{0.0, 0.5, 0.25, 0.75}, {0.5, 1.0, 0.0, 0.25}, {0.5, 1.0, 0.75, 1.0}};
        default:
            throw std::logic_error("no piecewise density for this copula family");
    }
}

// Conditional cdf of the piecewise-constant part at row v, normalised to integrate to one.
double piecewise_conditional(const std::vector<Band>& support, double u, double v) {
    double mass = 0.0;
    double below = 0.0;
    for (const auto& band : support) {
        const bool in_row = (v >= band.v_lo && v < band.v_hi) || (band.v_hi == 1.0 && v >= 1.0);
        if (!in_row) continue;
        mass += band.u_hi - band.u_lo;
        below += std::clamp(u - band.u_lo, 0.0, band.u_hi - band.u_lo);
    }
    return mass > 0.0 ? below / mass : u;
}

bool closed_form(CopulaFamily family) {
    return family == CopulaFamily::AsymmetricGumbel || family == CopulaFamily::Gumbel ||
           family == CopulaFamily::Clayton;
}

void check_copula_param(CopulaFamily family, double param) {
    switch (family) {
        case CopulaFamily::AsymmetricGumbel:
        case CopulaFamily::Gumbel:
            if (!(param >= 1.0) || !std::isfinite(param)) throw std::invalid_argument("Gumbel gamma must be >= 1");
            break;
        case CopulaFamily::Clayton:
            if (!(param > 0.0) || !std::isfinite(param)) throw std::invalid_argument("Clayton gamma must be > 0");
            break;
        case CopulaFamily::ZeroCirculation:
            if (!(param >= 0.0 && param <= 1.0)) throw std::invalid_argument("circulation lambda must lie in [0,1]");
            break;
        case CopulaFamily::Nelsen3:
        case CopulaFamily::Nelsen6:
            break;
    }
}

struct ChainSource {
    CopulaFamily family;
    double param;
};

ChainSource chain_source(const ModelSpec& spec) {
    switch (spec.family) {
        case ModelFamily::M8:
        case ModelFamily::M10: return {CopulaFamily::AsymmetricGumbel, spec.param};
        case ModelFamily::M9:
        case ModelFamily::M11: return {CopulaFamily::ZeroCirculation, spec.param};
        case ModelFamily::M12: return {CopulaFamily::Gumbel, gumbel_from_kendall(spec.param)};
        case ModelFamily::M13: return {CopulaFamily::Clayton, clayton_from_kendall(spec.param)};
        case ModelFamily::M14: return {CopulaFamily::Nelsen3, 0.0};
        case ModelFamily::M15: return {CopulaFamily::Nelsen6, 0.0};
        default: throw std::logic_error("model is not a copula chain");
    }
}

std::vector<double> copula_chain(const CopulaGrid& grid, std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    double previous = 0.5;
    for (std::size_t step = 0; step < kBurnIn + n; ++step) {
        previous = conditional_inverse(grid, rng.uniform(), previous);
        if (step >= kBurnIn) x[step - kBurnIn] = previous;
    }
    return x;
}

template <class Step>
std::vector<double> recursion(std::size_t n, Step&& step) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < kBurnIn + n; ++t) {
        const double value = step(t);
        if (t >= kBurnIn) x[t - kBurnIn] = value;
    }
    return x;
}

}  // namespace

std::string_view to_string(ModelFamily family) noexcept {
    static constexpr std::array<std::string_view, 16> names = {"M0", "M1", "M2",  "M3",  "M4",  "M5",  "M6",  "M7",
                                                               "M8", "M9", "M10", "M11", "M12", "M13", "M14", "M15"};
    return names[static_cast<std::size_t>(family)];
}

void ModelSpec::validate() const {
    switch (family) {
        case ModelFamily::M6:
        case ModelFamily::M7:
            if (!(std::abs(param) < 1.0)) throw std::invalid_argument(name + ": AR coefficient must satisfy |phi| < 1");
            break;
        case ModelFamily::M8:
        case ModelFamily::M10:
            if (!(param >= 1.0) || !std::isfinite(param)) throw std::invalid_argument(name + ": gamma must be >= 1");
            break;
        case ModelFamily::M9:
        case ModelFamily::M11:
            if (!(param >= 0.0 && param <= 1.0)) throw std::invalid_argument(name + ": lambda must lie in [0,1]");
            break;
        case ModelFamily::M12:
        case ModelFamily::M13:
            if (!(param > 0.0 && param < 1.0)) throw std::invalid_argument(name + ": Kendall's tau must lie in (0,1)");
            break;
        default:
            break;
    }
    if (copula_grid < 2) throw std::invalid_argument(name + ": copula grid needs at least two points");
}

const std::vector<ModelSpec>& model_catalog() {
    static const std::vector<ModelSpec> catalog = build_catalog();
    return catalog;
}

ModelSpec find_model(std::string_view name) {
    for (const auto& spec : model_catalog()) {
        if (spec.name == name) return spec;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

double gumbel_from_kendall(double tau) {
    if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("Kendall's tau must lie in [0,1)");
    return 1.0 / (1.0 - tau);
}

double clayton_from_kendall(double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("Kendall's tau must lie in (0,1)");
    return 2.0 * tau / (1.0 - tau);
}

double copula_cdf(CopulaFamily family, double param, double u, double v) {
    double value = 0.0;
    if (boundary(u, v, value)) return value;
    switch (family) {
        case CopulaFamily::AsymmetricGumbel: {
            constexpr double a = 1.0;
            constexpr double b = 0.5;
            const double s = std::pow(-a * std::log(u), param) + std::pow(-b * std::log(v), param);
            return std::pow(u, 1.0 - a) * std::pow(v, 1.0 - b) * std::exp(-std::pow(s, 1.0 / param));
        }
        case CopulaFamily::Gumbel: {
            const double s = std::pow(-std::log(u), param) + std::pow(-std::log(v), param);
            return std::exp(-std::pow(s, 1.0 / param));
        }
        case CopulaFamily::Clayton: {
            const double s = std::pow(u, -param) + std::pow(v, -param) - 1.0;
            return std::pow(s, -1.0 / param);
        }
        default:
            throw std::invalid_argument("copula_cdf: family has no closed form");
    }
}

CopulaGrid::CopulaGrid(std::size_t size, std::vector<double> table) : size_(size), table_(std::move(table)) {
    if (size_ < 2 || table_.size() != size_ * size_) throw std::invalid_argument("malformed copula grid");
}

std::size_t CopulaGrid::nearest_row(double v) const noexcept {
    const double scaled = std::clamp(v, 0.0, 1.0) * static_cast<double>(size_ - 1);
    return static_cast<std::size_t>(std::lround(scaled));
}

CopulaGrid build_copula_grid(CopulaFamily family, double param, std::size_t size) {
    check_copula_param(family, param);
    if (size < 2) throw std::invalid_argument("copula grid needs at least two points");
    const double step = 1.0 / static_cast<double>(size);
    const auto node = [size](std::size_t k) { return static_cast<double>(k) / static_cast<double>(size - 1); };

    std::vector<double> table(size * size);
    const auto support = closed_form(family) ? std::vector<Band>{} : bands(family);
    for (std::size_t h = 0; h < size; ++h) {
        const double v = node(h);
        double* row = table.data() + h * size;
        if (closed_form(family)) {
            const double hi = std::min(1.0, v + step);
            const double lo = std::max(0.0, v - step);
            for (std::size_t g = 0; g < size; ++g) {
                const double u = node(g);
                row[g] = (copula_cdf(family, param, u, hi) - copula_cdf(family, param, u, lo)) / (hi - lo);
            }
        } else {
            for (std::size_t g = 0; g < size; ++g) {
                const double u = node(g);
                const double structured = piecewise_conditional(support, u, v);
                row[g] = family == CopulaFamily::ZeroCirculation ? param * u + (1.0 - param) * structured
                                                                 : structured;
            }
        }
        // finite differences can wiggle by rounding; restore a proper distribution function
        row[0] = std::max(0.0, row[0]);
        for (std::size_t g = 1; g < size; ++g) row[g] = std::max(row[g], row[g - 1]);
        const double total = row[size - 1];
        if (total > 0.0) {
            for (std::size_t g = 0; g < size; ++g) row[g] = std::min(1.0, row[g] / total);
        }
        row[size - 1] = 1.0;
    }
    return CopulaGrid(size, std::move(table));
}

std::shared_ptr<const CopulaGrid> cached_copula_grid(CopulaFamily family, double param, std::size_t size) {
    using Key = std::tuple<int, double, std::size_t>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const CopulaGrid>> cache;
    const Key key{static_cast<int>(family), param, size};
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto grid = std::make_shared<const CopulaGrid>(build_copula_grid(family, param, size));
    cache.emplace(key, grid);
    return grid;
}

double conditional_inverse(const CopulaGrid& grid, double u, double v) {
    const auto row = grid.row(grid.nearest_row(v));
    const auto it = std::lower_bound(row.begin(), row.end(), u);
    const auto g = static_cast<std::size_t>(std::distance(row.begin(), it));
    double x = 0.0;
    if (g == 0) {
        x = grid.node(0);
    } else if (g >= grid.size()) {
        x = grid.node(grid.size() - 1);
    } else {
        const double lo = row[g - 1];
        const double hi = row[g];
        const double fraction = hi > lo ? (u - lo) / (hi - lo) : 1.0;
        x = grid.node(g - 1) + fraction * (grid.node(g) - grid.node(g - 1));
    }
    constexpr double kEdge = 1e-12;
    return std::clamp(x, kEdge, 1.0 - kEdge);
}

RealSeries generate(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    Rng rng(seed);

    switch (spec.family) {
        case ModelFamily::M0: {
            std::vector<double> x(n);
            for (auto& value : x) value = rng.normal();
            return RealSeries(std::move(x));
        }
        case ModelFamily::M1: {
            double previous = 0.0;
            return RealSeries(recursion(n, [&](std::size_t) {
                const double u = rng.uniform();
                previous = 0.1 * normal_quantile(u) + 1.9 * (u - 0.5) * previous;
                return previous;
            }));
        }
        case ModelFamily::M2: {
            double lag1 = 0.0;
            double lag2 = 0.0;
            return RealSeries(recursion(n, [&](std::size_t) {
                const double value = -0.36 * lag2 + rng.normal();
                lag2 = lag1;
                lag1 = value;
                return value;
            }));
        }
        case ModelFamily::M3: {
            double previous = 0.0;
            return RealSeries(recursion(n, [&](std::size_t) {
                previous = std::sqrt(1.0 / 1.9 + 0.9 * previous * previous) * rng.normal();
                return previous;
            }));
        }
        case ModelFamily::M4: {
            double previous = 0.0;
            double variance = 0.01 / (1.0 - 0.9);
            return RealSeries(recursion(n, [&](std::size_t) {
                variance = 0.01 + 0.4 * previous * previous + 0.5 * variance;
                previous = std::sqrt(variance) * rng.normal();
                return previous;
            }));
        }
        case ModelFamily::M5: {
            // News term in the standardized innovation; the same recursion in X_{t-1} diverges.
            const double mean_abs = std::sqrt(2.0 / std::numbers::pi);
            double shock = 0.0;
            double log_variance = 0.1 / (1.0 - 0.8);
            return RealSeries(recursion(n, [&](std::size_t) {
                log_variance = 0.1 + 0.21 * (std::abs(shock) - mean_abs) - 0.2 * shock + 0.8 * log_variance;
                shock = rng.normal();
                return std::exp(0.5 * log_variance) * shock;
            }));
        }
        case ModelFamily::M6:
        case ModelFamily::M7: {
            const bool cauchy = spec.family == ModelFamily::M7;
            double previous = 0.0;
            return RealSeries(recursion(n, [&](std::size_t) {
                previous = spec.param * previous + (cauchy ? rng.cauchy() : rng.normal());
                return previous;
            }));
        }
        case ModelFamily::M10:
        case ModelFamily::M11: {
            const auto source = chain_source(spec);
            const auto grid = cached_copula_grid(source.family, source.param, spec.copula_grid);
            const std::size_t half = (n + 1) / 2;
            const auto odd = copula_chain(*grid, half, rng);
            const auto even = copula_chain(*grid, half, rng);
            std::vector<double> x(n);
            for (std::size_t t = 0; t < n; ++t) x[t] = t % 2 == 0 ? odd[t / 2] : even[t / 2];
            return RealSeries(std::move(x));
        }
        default: {
            const auto source = chain_source(spec);
            const auto grid = cached_copula_grid(source.family, source.param, spec.copula_grid);
            return RealSeries(copula_chain(*grid, n, rng));
        }
    }
}

}  // namespace icspec
