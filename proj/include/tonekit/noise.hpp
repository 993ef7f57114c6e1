#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tonekit/core.hpp"
#include "tonekit/spectral.hpp"

namespace tonekit {

enum class NoiseColor { white, pink, brown, blue, violet, black, gray };

std::string_view to_string(NoiseColor c);
NoiseColor parse_noise_color(std::string_view name);

// Equal-loudness table: (Hz, dB) points sorted by frequency.
using LoudnessCurve = std::vector<std::pair<double, double>>;

struct NoiseSpec {
    NoiseColor color = NoiseColor::white;
    std::size_t length = 0;
    SampleRate rate;
    std::uint64_t seed = 0;
    double f_min = 15.0;
    // Upper band edge for blue and violet; none keeps every bin up to Nyquist.
    std::optional<double> f_max;
    // Black noise roll-off in dB/octave, > 6.
    double beta = 12.0;
    std::optional<LoudnessCurve> loudness_curve;
};

namespace noise {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

// Hermitian coefficient set with random phases.
Spectrum coefficients(const NoiseSpec& spec);
// Magnitude assigned to bin k (0 at DC and outside the band).
double bin_magnitude(const NoiseSpec& spec, std::size_t k);

SampleBuffer generate(const NoiseSpec& spec);

// Largest |imag| of a raw inverse transform.
double imaginary_residual(std::span<const std::complex<double>> samples);

// Reads "hz,db" rows; '#' starts a comment.
LoudnessCurve load_loudness_curve(const std::string& path);
LoudnessCurve parse_loudness_curve(std::string_view text);
// Linear interpolation in log-frequency, clamped at the table ends.
double curve_db(const LoudnessCurve& curve, double hz);

} // namespace noise
} // namespace tonekit
