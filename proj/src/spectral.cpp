#include "tonekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"

namespace tonekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<double>& mono_samples(const SampleBuffer& buf, const char* what) {
    if (buf.channel_count() != 1)
        throw InvalidArgument(std::string(what) + ": mono input required (analyze channels separately)");
    if (buf.empty()) throw InvalidArgument(std::string(what) + ": empty buffer");
    return buf.samples(0);
}

void require_hermitian(const std::vector<std::complex<double>>& c) {
    const std::size_t n = c.size();
    double scale = 1.0;
    for (const auto& z : c) scale = std::max(scale, std::abs(z));
    const double tol = 1e-9 * scale;
    if (std::fabs(c[0].imag()) > tol)
        throw InvalidArgument("reconstruct_real: bias coefficient is not real");
    if (n % 2 == 0 && std::fabs(c[n / 2].imag()) > tol)
        throw InvalidArgument("reconstruct_real: Nyquist coefficient is not real");
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(c[k] - std::conj(c[n - k])) > tol)
            throw InvalidArgument("reconstruct_real: coefficients are not conjugate-symmetric at bin " +
                                  std::to_string(k));
}

} // namespace

Spectrum::Spectrum(SampleRate rate, std::vector<std::complex<double>> coeffs)
    : rate_(rate), coeffs_(std::move(coeffs)) {
    for (const auto& z : coeffs_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("spectrum coefficient is not finite");
}

double Spectrum::bin_frequency(std::size_t k) const {
    return static_cast<double>(k) * rate_.hz() / static_cast<double>(size());
}

std::size_t Spectrum::nearest_bin(double hz) const {
    const double k = std::round(hz * static_cast<double>(size()) / rate_.hz());
    return static_cast<std::size_t>(std::max(0.0, k));
}

double Spectrum::phase(std::size_t k) const {
    const auto& z = coeffs_[k];
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    return std::atan2(z.imag(), z.real());
}

namespace spectral {

Spectrum forward(const SampleBuffer& buf) {
    return buf.frames() <= kDirectLimit ? forward_direct(buf) : forward_fast(buf);
}

Spectrum forward_direct(const SampleBuffer& buf) {
    const auto& x = mono_samples(buf, "forward");
    const std::size_t n = x.size();
    std::vector<std::complex<double>> twiddle(n);
    for (std::size_t m = 0; m < n; ++m)
        twiddle[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / static_cast<double>(n));
    std::vector<std::complex<double>> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * twiddle[m];
            m += k;
            if (m >= n) m -= n;
        }
        c[k] = acc;
    }
    return Spectrum(buf.rate(), std::move(c));
}

Spectrum forward_fast(const SampleBuffer& buf) {
    return Spectrum(buf.rate(), detail::fft_real(mono_samples(buf, "forward")));
}

std::vector<std::complex<double>> inverse_complex(const std::vector<std::complex<double>>& coeffs) {
    return detail::ifft(coeffs);
}

std::size_t paired_count(std::size_t n) {
    if (n < 1) throw InvalidArgument("paired_count: n must be >= 1");
    return (n - n % 2) / 2 + n % 2 - 1;
}

SampleBuffer reconstruct_real(const Spectrum& spec) {
    const auto& c = spec.coeffs();
    const std::size_t n = c.size();
    if (n == 0) throw InvalidArgument("reconstruct_real: empty spectrum");
    require_hermitian(c);

    const std::size_t tau = paired_count(n);
    const double len = static_cast<double>(n);
    std::vector<double> mag(tau + 1), ph(tau + 1);
    for (std::size_t k = 1; k <= tau; ++k) {
        mag[k] = std::abs(c[k]);
        ph[k] = spec.phase(k);
    }
    std::vector<double> cosine(n);
    for (std::size_t m = 0; m < n; ++m) cosine[m] = kTwoPi * static_cast<double>(m) / len;

    const double bias = c[0].real() / len;
    const double nyquist = n % 2 == 0 ? c[n / 2].real() / len : 0.0;
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= tau; ++k) {
            // Re(c_k e^{j w_k i}) = |c_k| cos(w_k i + arg c_k).
            const double w = cosine[(k * i) % n];
            acc += mag[k] * std::cos(w + ph[k]);
        }
        const double alt = (n % 2 == 0 && i % 2 == 1) ? -nyquist : nyquist;
        t[i] = bias + 2.0 / len * acc + alt;
    }
    return SampleBuffer::mono(spec.rate(), std::move(t));
}

double slope_db_per_octave(const Spectrum& spec, double f_lo, double f_hi) {
    const double nyq = spec.rate().nyquist();
    if (!(f_lo > 0.0) || !(f_hi <= nyq) || !(f_lo < f_hi))
        throw InvalidArgument("slope band must satisfy 0 < f_lo < f_hi <= Nyquist");
    if (f_hi < 4.0 * f_lo) throw InvalidArgument("slope band must span at least two octaves");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t k = 1; k <= spec.size() / 2; ++k) {
        const double f = spec.bin_frequency(k);
        if (f < f_lo || f > f_hi) continue;
        const double m = spec.magnitude(k);
        if (m == 0.0) continue;
        const double x = std::log2(f);
        const double y = 20.0 * std::log10(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw InvalidArgument("slope band contains fewer than two nonzero bins");
    const double nn = static_cast<double>(count);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

std::vector<double> harmonic_magnitudes(const Spectrum& spec, double f0, std::size_t n_harmonics) {
    if (!(f0 > 0.0)) throw InvalidArgument("fundamental must be > 0");
    std::vector<double> out;
    for (std::size_t h = 1; h <= n_harmonics; ++h) {
        const double f = static_cast<double>(h) * f0;
        if (f > spec.rate().nyquist())
            throw InvalidArgument("harmonic " + std::to_string(h) + " lies above Nyquist");
        out.push_back(spec.magnitude(spec.nearest_bin(f)));
    }
    return out;
}

double peak_frequency(const Spectrum& spec) {
    const std::size_t half = spec.size() / 2;
    if (half < 1) throw InvalidArgument("peak_frequency: spectrum too short");
    std::size_t best = 1;
    for (std::size_t k = 2; k <= half; ++k)
        if (spec.magnitude(k) > spec.magnitude(best)) best = k;
    if (spec.magnitude(best) == 0.0) throw DegenerateSignal("peak_frequency: no energy above DC");

    double offset = 0.0;
    if (best > 1 && best < half) {
        const double a = spec.magnitude(best - 1), b = spec.magnitude(best), c = spec.magnitude(best + 1);
        if (a > 0.0 && c > 0.0) {
            const double la = std::log(a), lb = std::log(b), lc = std::log(c);
            const double denom = la - 2.0 * lb + lc;
            if (denom != 0.0) offset = 0.5 * (la - lc) / denom;
        }
    }
    return (static_cast<double>(best) + offset) * spec.rate().hz() / static_cast<double>(spec.size());
}

SampleBuffer window(const SampleBuffer& buf, std::size_t start, std::size_t length) {
    const auto& x = mono_samples(buf, "window");
    if (start + length > x.size()) throw InvalidArgument("window exceeds buffer");
    return SampleBuffer::mono(buf.rate(), std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(start),
                                                              x.begin() + static_cast<std::ptrdiff_t>(start + length)));
}

double window_peak_frequency(const SampleBuffer& buf, std::size_t start, std::size_t length,
                             std::size_t padded) {
    auto w = window(buf, start, length);
    return peak_frequency(forward_fast(resize(w, std::max(padded, length))));
}

} // namespace spectral
} // namespace tonekit
