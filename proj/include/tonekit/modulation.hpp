#pragma once

#include <functional>
#include <vector>

#include "tonekit/core.hpp"
#include "tonekit/oscillator.hpp"

namespace tonekit {

// A modulator: table played at `freq` Hz.
struct OscillatorPattern {
    OscillatorPattern(WaveTable table, double freq);
    // Sine table of the default length.
    explicit OscillatorPattern(double freq);

    WaveTable table;
    double freq;
};

enum class EnvelopeMode { linear, exponential };

struct AdsrSpec {
    double attack = 0.0;
    double decay = 0.0;
    double release = 0.0;
    double sustain = 1.0;
    EnvelopeMode mode = EnvelopeMode::exponential;
    double floor = 1e-4;
};

struct LinkSpec {
    std::function<double(double)> mod_freq;
    std::function<double(double)> depth_semitones;
    std::function<double(double)> depth_db;
};

struct LinkedParameters {
    double f_mod;
    double nu;
    double v_db;
};

namespace modulation {

// Modulator values m[floor(i f' len / rate) % len] for i < frames.
std::vector<double> pattern_sequence(const OscillatorPattern& p, std::size_t frames,
                                     SampleRate rate);

SampleBuffer vibrato(const WaveTable& table, double f, double delta, SampleRate rate,
                     const OscillatorPattern& pattern, double nu);
SampleBuffer tremolo(const SampleBuffer& buf, const OscillatorPattern& pattern, Decibels v);

// t_i (1 + alpha sin(2 pi f_mod i / rate)).
SampleBuffer am(const SampleBuffer& buf, double f_mod, double alpha);
// t_i (1 + alpha m_i) for an arbitrary modulator.
SampleBuffer am(const SampleBuffer& buf, const OscillatorPattern& pattern, double alpha);

// Frequency-deviation FM: f_i = f + mu m_i, mu in Hz.
SampleBuffer fm(const WaveTable& table, double f, double f_mod, double mu, double delta,
                SampleRate rate);
SampleBuffer fm(const WaveTable& table, double f, const OscillatorPattern& pattern, double mu,
                double delta, SampleRate rate);

// Bessel function of the first kind, integer order, by power series.
double bessel_j(int k, double x);

std::vector<double> adsr_envelope(const AdsrSpec& spec, std::size_t frames, SampleRate rate);
SampleBuffer adsr(const SampleBuffer& buf, const AdsrSpec& spec);

LinkedParameters link_parameters(double f, const LinkSpec& link);

} // namespace modulation
} // namespace tonekit
