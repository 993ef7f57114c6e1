#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <catch_amalgamated.hpp>

#include "tonekit/core.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline tonekit::SampleBuffer mono(std::vector<double> v, int rate = 44100) {
    return tonekit::SampleBuffer::mono(tonekit::SampleRate(rate), std::move(v));
}

inline std::vector<double> sine_samples(double f, std::size_t n, double rate = 44100.0, double amp = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = amp * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / rate);
    return v;
}

inline std::vector<double> lcg_samples(std::size_t n, unsigned seed) {
    std::vector<double> v(n);
    unsigned long long s = seed * 2654435761ULL + 1;
    for (auto& x : v) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        x = static_cast<double>(s >> 11) / 9007199254740992.0 * 2.0 - 1.0;
    }
    return v;
}
