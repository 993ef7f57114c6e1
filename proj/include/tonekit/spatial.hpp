#pragma once

#include <cstdint>

#include "tonekit/core.hpp"
#include "tonekit/filters.hpp"
#include "tonekit/noise.hpp"
#include "tonekit/oscillator.hpp"

namespace tonekit {

inline constexpr double kSpeedOfSound = 343.2;

// Head-centred coordinates in metres; +x points to the right ear, +y ahead.
struct SourcePosition {
    double x = 0.0;
    double y = 1.0;
    double ear_spacing = 0.215;
};

struct InterauralCues {
    double itd;        // seconds; positive when the right ear hears first
    Decibels iid;      // 20 log10(d_right / d_left)
    double d_right;
    double d_left;
};

// Source travelling along y at lateral distance z0, observer moving along y.
struct DopplerPath {
    double y0 = -20.0;
    double z0 = 2.0;
    double v_source = 0.0;
    double v_receiver = 0.0;
    double f0 = 440.0;
};

struct ReverbSpec {
    double first_period = 0.1;
    double total = 1.9;
    Decibels decay{-60.0};
    NoiseColor tail = NoiseColor::brown;
    std::uint64_t seed = 0;
};

namespace spatial {

InterauralCues itd_iid(const SourcePosition& pos);
double azimuth(const SourcePosition& pos);

// Mono in, stereo out. The nearer ear's channel carries the signal as is; the
// other is scaled by the distance ratio and delayed by the truncated ITD.
SampleBuffer localize(const SampleBuffer& buf, const SourcePosition& pos);

double doppler_shift(double f0, double v_source, double v_receiver);
// Per-sample observed frequency and amplitude along the path.
std::vector<double> doppler_frequencies(const DopplerPath& path, std::size_t frames, SampleRate rate);
std::vector<double> doppler_amplitudes(const DopplerPath& path, std::size_t frames, SampleRate rate);
SampleBuffer doppler_render(const DopplerPath& path, const WaveTable& table, double delta,
                            SampleRate rate);

ImpulseResponse reverb_impulse(const ReverbSpec& spec, SampleRate rate);

} // namespace spatial
} // namespace tonekit
