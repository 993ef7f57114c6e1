#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tonekit/error.hpp"

namespace tonekit {

class SampleRate {
public:
    static constexpr int kDefault = 44100;

    constexpr SampleRate() = default;
    explicit SampleRate(int hz);

    int hz() const noexcept { return hz_; }
    double nyquist() const noexcept { return hz_ / 2.0; }

    friend bool operator==(SampleRate, SampleRate) = default;

private:
    int hz_ = kDefault;
};

class Decibels {
public:
    constexpr Decibels() = default;
    explicit Decibels(double value);

    double value() const noexcept { return value_; }
    Decibels operator-() const { return Decibels(-value_); }

    friend bool operator==(Decibels, Decibels) = default;

private:
    double value_ = 0.0;
};

// One or two channels of equal length. Channel 0 is left, channel 1 right.
class SampleBuffer {
public:
    SampleBuffer() = default;
    SampleBuffer(SampleRate rate, std::size_t channels, std::size_t frames);

    static SampleBuffer mono(SampleRate rate, std::vector<double> samples);
    static SampleBuffer stereo(SampleRate rate, std::vector<double> left,
                               std::vector<double> right);

    SampleRate rate() const noexcept { return rate_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    std::size_t frames() const noexcept {
        return channels_.empty() ? 0 : channels_.front().size();
    }
    bool empty() const noexcept { return frames() == 0; }
    double seconds() const noexcept {
        return static_cast<double>(frames()) / rate_.hz();
    }

    std::span<const double> channel(std::size_t c) const;
    // Writers must keep samples finite.
    std::span<double> channel(std::size_t c);

    const std::vector<double>& samples(std::size_t c = 0) const;

    friend bool operator==(const SampleBuffer&, const SampleBuffer&) = default;

private:
    SampleRate rate_;
    std::vector<std::vector<double>> channels_{std::vector<double>{}};
};

// floor(delta * rate); products within rounding noise of an integer snap to it.
std::size_t duration_to_samples(double delta, SampleRate rate);

// floor() that absorbs binary representation error just below an integer.
double snap_floor(double x);

double power(std::span<const double> samples);
// Per-channel mean square.
std::vector<double> power(const SampleBuffer& buf);

// 10*log10 of the ratio of mean powers (averaged over channels).
Decibels db_difference(const SampleBuffer& a, const SampleBuffer& b);
double db_to_gain(Decibels v);
Decibels gain_to_db(double gain);

SampleBuffer mix(std::span<const SampleBuffer> bufs);
SampleBuffer concat(std::span<const SampleBuffer> bufs);
SampleBuffer normalize(const SampleBuffer& buf, double peak);

SampleBuffer scale(const SampleBuffer& buf, double k);
// Prepends `frames` zeros to every channel.
SampleBuffer delay(const SampleBuffer& buf, std::size_t frames);
// Zero-pads (or truncates) every channel to `frames`.
SampleBuffer resize(const SampleBuffer& buf, std::size_t frames);
// Duplicates a mono buffer into two identical channels.
SampleBuffer to_stereo(const SampleBuffer& buf);
double peak(const SampleBuffer& buf);

} // namespace tonekit
