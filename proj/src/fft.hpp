#pragma once

#include <cstddef>
#include <span>

#include "icspec/core.hpp"

namespace icspec::detail {

/// Forward real-to-complex DFT of length m: out[s] = sum_t in[t] e^{-i 2 pi s t / m}, s = 0..m/2.
/// `out` must hold m/2 + 1 values. Plans are cached per length and shared across threads.
void real_dft(std::span<const double> in, std::span<Complex> out);

}  // namespace icspec::detail
