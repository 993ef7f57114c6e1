#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace tonekit::detail {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwArray = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwArray<T> alloc(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (!p) throw std::bad_alloc();
    return FftwArray<T>(p);
}

std::vector<std::complex<double>> r2c(std::span<const double> x, std::size_t n) {
    auto in = alloc<double>(n);
    auto out = alloc<fftw_complex>(n / 2 + 1);
    std::fill_n(in.get(), n, 0.0);
    std::copy(x.begin(), x.end(), in.get());
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    std::vector<std::complex<double>> c(n);
    for (std::size_t k = 0; k <= n / 2; ++k) c[k] = {out[k][0], out[k][1]};
    for (std::size_t k = n / 2 + 1; k < n; ++k) c[k] = std::conj(c[n - k]);
    return c;
}

} // namespace

std::vector<std::complex<double>> fft_real(std::span<const double> x) {
    if (x.empty()) return {};
    return r2c(x, x.size());
}

std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> c) {
    const std::size_t n = c.size();
    if (n == 0) return {};
    auto in = alloc<fftw_complex>(n);
    auto out = alloc<fftw_complex>(n);
    for (std::size_t k = 0; k < n; ++k) {
        in[k][0] = c[k].real();
        in[k][1] = c[k].imag();
    }
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_BACKWARD,
                                    FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    std::vector<std::complex<double>> x(n);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {out[i][0] * inv, out[i][1] * inv};
    return x;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t len = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < len) n <<= 1;

    auto ca = r2c(a, n);
    auto cb = r2c(b, n);
    const std::size_t half = n / 2 + 1;
    auto spec = alloc<fftw_complex>(half);
    auto out = alloc<double>(n);
    for (std::size_t k = 0; k < half; ++k) {
        const auto p = ca[k] * cb[k];
        spec[k][0] = p.real();
        spec[k][1] = p.imag();
    }
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), spec.get(), out.get(), FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    std::vector<double> y(len);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < len; ++i) y[i] = out[i] * inv;
    return y;
}

} // namespace tonekit::detail
