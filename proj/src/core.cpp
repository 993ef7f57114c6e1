#include "tonekit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tonekit {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite sample");
    }
}

void require_compatible(std::span<const SampleBuffer> bufs, const char* what) {
    for (const auto& b : bufs) {
        if (b.rate() != bufs.front().rate())
            throw InvalidArgument(std::string(what) + ": sample rate mismatch");
        if (b.channel_count() != bufs.front().channel_count())
            throw InvalidArgument(std::string(what) + ": channel count mismatch");
    }
}

double mean_power(const SampleBuffer& buf) {
    auto p = power(buf);
    double s = 0.0;
    for (double v : p) s += v;
    return s / static_cast<double>(p.size());
}

} // namespace

SampleRate::SampleRate(int hz) : hz_(hz) {
    if (hz < 2) throw InvalidArgument("sample rate must be >= 2, got " + std::to_string(hz));
}

Decibels::Decibels(double value) : value_(value) {
    if (!std::isfinite(value)) throw InvalidArgument("decibel value must be finite");
}

SampleBuffer::SampleBuffer(SampleRate rate, std::size_t channels, std::size_t frames)
    : rate_(rate) {
    if (channels < 1 || channels > 2) throw InvalidArgument("channel count must be 1 or 2");
    channels_.assign(channels, std::vector<double>(frames, 0.0));
}

SampleBuffer SampleBuffer::mono(SampleRate rate, std::vector<double> samples) {
    require_finite(samples, "mono");
    SampleBuffer b;
    b.rate_ = rate;
    b.channels_.front() = std::move(samples);
    return b;
}

SampleBuffer SampleBuffer::stereo(SampleRate rate, std::vector<double> left,
                                  std::vector<double> right) {
    if (left.size() != right.size()) throw InvalidArgument("stereo: channel lengths differ");
    require_finite(left, "stereo");
    require_finite(right, "stereo");
    SampleBuffer b;
    b.rate_ = rate;
    b.channels_ = {std::move(left), std::move(right)};
    return b;
}

std::span<const double> SampleBuffer::channel(std::size_t c) const {
    return samples(c);
}

std::span<double> SampleBuffer::channel(std::size_t c) {
    if (c >= channels_.size()) throw InvalidArgument("channel index out of range");
    return channels_[c];
}

const std::vector<double>& SampleBuffer::samples(std::size_t c) const {
    if (c >= channels_.size()) throw InvalidArgument("channel index out of range");
    return channels_[c];
}

double snap_floor(double x) {
    const double nearest = std::nearbyint(x);
    const double tol = 1e-9 + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x);
    if (std::fabs(x - nearest) <= tol) return nearest;
    return std::floor(x);
}

std::size_t duration_to_samples(double delta, SampleRate rate) {
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw InvalidArgument("duration must be finite and >= 0");
    return static_cast<std::size_t>(snap_floor(delta * rate.hz()));
}

double power(std::span<const double> samples) {
    if (samples.empty()) throw InvalidArgument("power of an empty buffer");
    double s = 0.0;
    for (double x : samples) s += x * x;
    return s / static_cast<double>(samples.size());
}

std::vector<double> power(const SampleBuffer& buf) {
    std::vector<double> out;
    for (std::size_t c = 0; c < buf.channel_count(); ++c) out.push_back(power(buf.channel(c)));
    return out;
}

Decibels db_difference(const SampleBuffer& a, const SampleBuffer& b) {
    const double pa = mean_power(a);
    const double pb = mean_power(b);
    if (pb == 0.0) throw DegenerateSignal("db_difference: reference buffer has zero power");
    if (pa == 0.0) throw DegenerateSignal("db_difference: buffer has zero power");
    return Decibels(10.0 * std::log10(pa / pb));
}

double db_to_gain(Decibels v) { return std::pow(10.0, v.value() / 20.0); }

Decibels gain_to_db(double gain) {
    if (!(gain > 0.0)) throw InvalidArgument("gain must be positive");
    return Decibels(20.0 * std::log10(gain));
}

SampleBuffer mix(std::span<const SampleBuffer> bufs) {
    if (bufs.empty()) return {};
    require_compatible(bufs, "mix");
    std::size_t frames = 0;
    for (const auto& b : bufs) frames = std::max(frames, b.frames());
    SampleBuffer out(bufs.front().rate(), bufs.front().channel_count(), frames);
    for (const auto& b : bufs) {
        for (std::size_t c = 0; c < b.channel_count(); ++c) {
            auto dst = out.channel(c);
            auto src = b.channel(c);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
        }
    }
    return out;
}

SampleBuffer concat(std::span<const SampleBuffer> bufs) {
    if (bufs.empty()) return {};
    require_compatible(bufs, "concat");
    std::size_t frames = 0;
    for (const auto& b : bufs) frames += b.frames();
    SampleBuffer out(bufs.front().rate(), bufs.front().channel_count(), frames);
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        auto dst = out.channel(c).begin();
        for (const auto& b : bufs) dst = std::copy(b.channel(c).begin(), b.channel(c).end(), dst);
    }
    return out;
}

double peak(const SampleBuffer& buf) {
    double m = 0.0;
    for (std::size_t c = 0; c < buf.channel_count(); ++c)
        for (double x : buf.channel(c)) m = std::max(m, std::fabs(x));
    return m;
}

SampleBuffer normalize(const SampleBuffer& buf, double target) {
    if (!std::isfinite(target)) throw InvalidArgument("normalize: peak must be finite");
    if (buf.empty()) throw InvalidArgument("normalize: empty buffer");
    const double m = peak(buf);
    if (m == 0.0) throw DegenerateSignal("normalize: silent buffer");
    if (m == target) return buf;
    return scale(buf, target / m);
}

SampleBuffer scale(const SampleBuffer& buf, double k) {
    if (!std::isfinite(k)) throw InvalidArgument("scale: factor must be finite");
    SampleBuffer out = buf;
    for (std::size_t c = 0; c < out.channel_count(); ++c)
        for (double& x : out.channel(c)) x *= k;
    return out;
}

SampleBuffer delay(const SampleBuffer& buf, std::size_t frames) {
    SampleBuffer out(buf.rate(), buf.channel_count(), buf.frames() + frames);
    for (std::size_t c = 0; c < buf.channel_count(); ++c)
        std::copy(buf.channel(c).begin(), buf.channel(c).end(), out.channel(c).begin() + frames);
    return out;
}

SampleBuffer resize(const SampleBuffer& buf, std::size_t frames) {
    SampleBuffer out(buf.rate(), buf.channel_count(), frames);
    const std::size_t n = std::min(frames, buf.frames());
    for (std::size_t c = 0; c < buf.channel_count(); ++c)
        std::copy_n(buf.channel(c).begin(), n, out.channel(c).begin());
    return out;
}

SampleBuffer to_stereo(const SampleBuffer& buf) {
    if (buf.channel_count() == 2) return buf;
    return SampleBuffer::stereo(buf.rate(), buf.samples(0), buf.samples(0));
}

} // namespace tonekit
