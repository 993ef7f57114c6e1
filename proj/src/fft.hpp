#pragma once

// FFTW-backed transforms shared by spectral, filters and noise.

#include <complex>
#include <span>
#include <vector>

namespace tonekit::detail {

// c_k = sum_i x_i e^{-j 2 pi k i / n}, all n bins.
std::vector<std::complex<double>> fft_real(std::span<const double> x);

// x_i = (1/n) sum_k c_k e^{+j 2 pi k i / n}.
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> c);

// Linear convolution, length |a| + |b| - 1.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

} // namespace tonekit::detail
