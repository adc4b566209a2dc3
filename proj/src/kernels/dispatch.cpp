#include "ekg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace ekg::kernels {

namespace {

Backend detect() {
    if (const char* env = std::getenv("EKG_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0)
        return Backend::scalar;
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

} // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return avx2_compiled() && __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) b = Backend::scalar;
    current().store(b, std::memory_order_relaxed);
}

void reset_backend() { current().store(detect(), std::memory_order_relaxed); }

void wave_accel(const WaveInputs& in, double* gtt, double* ptt) {
    if (active_backend() == Backend::avx2) wave_accel_avx2(in, gtt, ptt);
    else wave_accel_scalar(in, gtt, ptt);
}

void densities(const DensityInputs& in, const DensityOutputs& out) {
    if (active_backend() == Backend::avx2) densities_avx2(in, out);
    else densities_scalar(in, out);
}

} // namespace ekg::kernels
