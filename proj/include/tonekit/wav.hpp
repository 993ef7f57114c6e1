#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tonekit/core.hpp"

namespace tonekit {

// Header summary of a 16-bit PCM file.
struct WavFile {
    SampleRate rate;
    std::size_t channels = 1;
    int bits_per_sample = 16;
    std::size_t frames = 0;
    // Samples clamped during export.
    std::size_t clipped = 0;
};

struct EncodedWav {
    std::vector<std::uint8_t> bytes;
    WavFile info;
};

namespace wav {

inline constexpr double kScale = 32767.0;

// round(s * 32767) clamped to [-32768, 32767]; sets `clipped` when clamping.
std::int16_t quantize(double s, bool& clipped);
double dequantize(std::int16_t v);

EncodedWav encode(const SampleBuffer& buf);
SampleBuffer decode(std::span<const std::uint8_t> bytes);
// Parses only the header; `frames` comes from the data chunk size.
WavFile inspect(std::span<const std::uint8_t> bytes);

} // namespace wav

WavFile write_wav(const SampleBuffer& buf, const std::string& path);
SampleBuffer read_wav(const std::string& path);

} // namespace tonekit
