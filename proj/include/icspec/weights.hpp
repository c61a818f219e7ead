#pragma once

#include "icspec/core.hpp"

namespace icspec {

/**
 * @brief Weight functions rescaling deviations across quantile pairs.
 *
 *   s1 = sqrt(t1 (1 - t1) t2 (1 - t2))
 *   s2 = max(t1, t2) - t1 t2
 *   s3 = min(t1, t2) - t1 t2
 *   s4 = 1
 *   s5 = sqrt(s3)
 *
 * @throws std::domain_error unless both levels lie in the open interval (0,1)
 */
[[nodiscard]] double weight(WeightKind kind, double tau1, double tau2);

struct QuantilePair {
    double tau1;
    double tau2;

    friend bool operator==(const QuantilePair&, const QuantilePair&) = default;
};

}  // namespace icspec
