#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace icspec {

/// Identifier persisted in result files so runs can be matched to the generator that produced them.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64/box-muller";

/// One round of the splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream (e.g. one replication) derived from a master seed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/**
 * @brief Deterministic random source built only from fully specified algorithms.
 *
 * The engine is std::mt19937_64 (bit-exact by the standard); uniform and normal
 * transforms are implemented here rather than with std distributions, whose output
 * is implementation-defined.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0,1) with 53-bit resolution.
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() noexcept;
    /// Standard Cauchy via tan(pi (U - 1/2)).
    double cauchy() noexcept;

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Standard normal quantile function.
[[nodiscard]] double normal_quantile(double p);

}  // namespace icspec
