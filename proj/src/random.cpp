#include "icspec/random.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <stdexcept>

#include "icspec/core.hpp"

namespace icspec {

double Rng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
}

double Rng::cauchy() noexcept { return std::tan(kPi * (uniform() - 0.5)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile needs p in (0,1)");
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

}  // namespace icspec
