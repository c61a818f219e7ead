#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace icspec::detail {
namespace {

// fftw planning is not thread-safe; execution with the new-array interface is.
fftw_plan plan_for(std::size_t m) {
    static std::mutex mutex;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard lock(mutex);
    if (auto it = plans.find(m); it != plans.end()) return it->second;
    std::vector<double> in(m);
    std::vector<fftw_complex> out(m / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.data(), out.data(),
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans.emplace(m, plan);
    return plan;
}

}  // namespace

void real_dft(std::span<const double> in, std::span<Complex> out) {
    const std::size_t m = in.size();
    if (m == 0 || out.size() != m / 2 + 1) throw std::invalid_argument("real_dft: bad buffer sizes");
    thread_local std::vector<double> scratch;
    scratch.assign(in.begin(), in.end());
    static_assert(sizeof(Complex) == sizeof(fftw_complex));
    fftw_execute_dft_r2c(plan_for(m), scratch.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace icspec::detail
