#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tonekit/core.hpp"

namespace tonekit {

// Unnormalized DFT coefficients c_k = a_k + j b_k of a mono buffer.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(SampleRate rate, std::vector<std::complex<double>> coeffs);

    SampleRate rate() const noexcept { return rate_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<std::complex<double>>& coeffs() const noexcept { return coeffs_; }
    const std::complex<double>& operator[](std::size_t k) const { return coeffs_[k]; }

    double bin_frequency(std::size_t k) const;
    std::size_t nearest_bin(double hz) const;
    double magnitude(std::size_t k) const { return std::abs(coeffs_[k]); }
    // Phase of c_k; zero when c_k = 0.
    double phase(std::size_t k) const;

private:
    SampleRate rate_;
    std::vector<std::complex<double>> coeffs_;
};

namespace spectral {

// Sizes above this use the FFT route in forward().
inline constexpr std::size_t kDirectLimit = 4096;

Spectrum forward(const SampleBuffer& buf);
// O(n^2) direct sum with exact twiddles.
Spectrum forward_direct(const SampleBuffer& buf);
Spectrum forward_fast(const SampleBuffer& buf);

// Complex inverse (1/n) sum c_k e^{+j w_k i}.
std::vector<std::complex<double>> inverse_complex(const std::vector<std::complex<double>>& coeffs);

// Real signal from magnitudes and phases of the first tau pairs plus the bias
// and (even n) Nyquist terms.
SampleBuffer reconstruct_real(const Spectrum& spec);

std::size_t paired_count(std::size_t n);

// Least-squares slope of 20 log10 |c_k| against log2 f_k over bins in
// [f_lo, f_hi]. Zero-magnitude bins are skipped.
double slope_db_per_octave(const Spectrum& spec, double f_lo, double f_hi);

// |c_k| at the bin nearest each multiple (n+1) f0.
std::vector<double> harmonic_magnitudes(const Spectrum& spec, double f0, std::size_t n_harmonics);

// Bin with the largest magnitude in (0, Nyquist], refined by a parabola
// through the log magnitudes of its neighbours.
double peak_frequency(const Spectrum& spec);

// Contiguous slice of a mono buffer (rectangular window).
SampleBuffer window(const SampleBuffer& buf, std::size_t start, std::size_t length);

// Peak frequency of a rectangular window zero-padded to `padded` samples.
double window_peak_frequency(const SampleBuffer& buf, std::size_t start, std::size_t length,
                             std::size_t padded = 1 << 16);

} // namespace spectral
} // namespace tonekit
