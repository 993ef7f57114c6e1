#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tonekit/core.hpp"

namespace tonekit {

class ImpulseResponse {
public:
    explicit ImpulseResponse(std::vector<double> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

private:
    std::vector<double> samples_;
};

// y_i = sum_j feedforward[j] x_{i-j} + sum_k feedback[k-1] y_{i-k}.
// Feedback terms are added, so a stable one-pole lowpass has positive b_1.
struct IIRCoefficients {
    std::vector<double> feedforward;
    std::vector<double> feedback;
};

enum class FilterKind { lowpass, highpass, bandpass, bandreject };

FilterKind parse_filter_kind(std::string_view name);

namespace filters {

// Direct-form sum. Multichannel buffers are filtered channel by channel.
SampleBuffer convolve(const SampleBuffer& x, const ImpulseResponse& h);
// FFT route; matches convolve() to rounding.
SampleBuffer convolve_fft(const SampleBuffer& x, const ImpulseResponse& h);

SampleBuffer apply_iir(const SampleBuffer& x, const IIRCoefficients& c);

// fc and bw are fractions of the sample rate.
IIRCoefficients design_iir(FilterKind kind, double fc, std::optional<double> bw = std::nullopt);

// Steady-state gain at `f` (fraction of rate): RMS ratio of a one-second sine
// probe after dropping the first 10% of samples.
double probe_magnitude(const IIRCoefficients& c, double f, SampleRate rate = SampleRate());

} // namespace filters
} // namespace tonekit
