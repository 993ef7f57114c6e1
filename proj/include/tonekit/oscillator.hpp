#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tonekit/core.hpp"

namespace tonekit {

enum class Shape { sine, sawtooth, triangle, square, sampled };

std::string_view to_string(Shape s);
// Accepts "sine", "sawtooth" (or "saw"), "triangle", "square".
Shape parse_shape(std::string_view name);

// One waveform period used as a lookup table.
class WaveTable {
public:
    static constexpr std::size_t kDefaultLength = 1024;

    Shape shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::span<const double> samples() const noexcept { return samples_; }
    double max() const;
    double min() const;

    // Frequency obtained by playing the table once per period at `rate`.
    double natural_frequency(SampleRate rate) const {
        return static_cast<double>(rate.hz()) / static_cast<double>(size());
    }

private:
    WaveTable(Shape shape, std::vector<double> samples);
    friend WaveTable build_wavetable(Shape, std::size_t);
    friend WaveTable from_sampled_period(std::vector<double>);

    Shape shape_;
    std::vector<double> samples_;
};

WaveTable build_wavetable(Shape shape, std::size_t table_len = WaveTable::kDefaultLength);
WaveTable from_sampled_period(std::vector<double> samples);

enum class GlideMode { linear, exponential };

struct GlideSpec {
    double f_start = 0.0;
    double f_end = 0.0;
    GlideMode mode = GlideMode::exponential;
};

SampleBuffer synth_note(const WaveTable& table, double f, double delta,
                        SampleRate rate = SampleRate());
SampleBuffer synth_glide(const WaveTable& table, const GlideSpec& glide, double delta,
                         SampleRate rate = SampleRate());

// Table lookup driven by a per-sample frequency track. Sample i reads index
// floor(sum_{j<i} f_j * len / rate), so a constant track equals synth_note.
SampleBuffer synth_from_frequencies(const WaveTable& table, std::span<const double> freqs,
                                    SampleRate rate);

// Per-sample frequencies of a glide over `frames` samples.
std::vector<double> glide_frequencies(const GlideSpec& glide, std::size_t frames);

SampleBuffer amp_transition(const SampleBuffer& buf, Decibels v, double alpha = 1.0);
SampleBuffer amp_transition_linear(const SampleBuffer& buf, double a_start, double a_end);

// Gain curve of amp_transition for `frames` samples.
std::vector<double> db_ramp(std::size_t frames, Decibels v, double alpha);

} // namespace tonekit
