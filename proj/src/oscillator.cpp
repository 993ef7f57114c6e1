#include "tonekit/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tonekit {

namespace {

std::size_t wrap_index(double phase, std::size_t n) {
    const auto k = static_cast<long long>(snap_floor(phase));
    const auto m = static_cast<long long>(n);
    return static_cast<std::size_t>(((k % m) + m) % m);
}

void require_audible(double f, SampleRate rate, const char* what) {
    if (!(f > 0.0) || !(f < rate.nyquist()))
        throw InvalidArgument(std::string(what) + ": frequency " + std::to_string(f) +
                              " Hz outside (0, Nyquist)");
}

// Neumaier-compensated running sum.
class RunningSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

std::string_view to_string(Shape s) {
    switch (s) {
    case Shape::sine: return "sine";
    case Shape::sawtooth: return "sawtooth";
    case Shape::triangle: return "triangle";
    case Shape::square: return "square";
    case Shape::sampled: return "sampled";
    }
    return "?";
}

Shape parse_shape(std::string_view name) {
    if (name == "sine") return Shape::sine;
    if (name == "sawtooth" || name == "saw") return Shape::sawtooth;
    if (name == "triangle") return Shape::triangle;
    if (name == "square") return Shape::square;
    throw InvalidArgument("unknown waveform shape '" + std::string(name) + "'");
}

WaveTable::WaveTable(Shape shape, std::vector<double> samples)
    : shape_(shape), samples_(std::move(samples)) {
    if (samples_.size() < 2) throw InvalidArgument("wavetable needs at least 2 samples");
    for (double x : samples_)
        if (!std::isfinite(x)) throw InvalidArgument("wavetable sample is not finite");
}

double WaveTable::max() const { return *std::max_element(samples_.begin(), samples_.end()); }
double WaveTable::min() const { return *std::min_element(samples_.begin(), samples_.end()); }

WaveTable build_wavetable(Shape shape, std::size_t table_len) {
    if (table_len < 2) throw InvalidArgument("table length must be >= 2");
    if (shape == Shape::sampled) throw InvalidArgument("use from_sampled_period for sampled tables");
    const double len = static_cast<double>(table_len);
    std::vector<double> s(table_len);
    for (std::size_t i = 0; i < table_len; ++i) {
        const double x = static_cast<double>(i);
        switch (shape) {
        case Shape::sine: s[i] = std::sin(2.0 * std::numbers::pi * x / len); break;
        case Shape::sawtooth: s[i] = 2.0 * x / len - 1.0; break;
        case Shape::triangle: s[i] = 1.0 - std::fabs(2.0 - 4.0 * x / len); break;
        case Shape::square: s[i] = x < len / 2.0 ? 1.0 : -1.0; break;
        case Shape::sampled: break;
        }
    }
    return WaveTable(shape, std::move(s));
}

WaveTable from_sampled_period(std::vector<double> samples) {
    return WaveTable(Shape::sampled, std::move(samples));
}

SampleBuffer synth_note(const WaveTable& table, double f, double delta, SampleRate rate) {
    require_audible(f, rate, "synth_note");
    const std::size_t frames = duration_to_samples(delta, rate);
    const double step = f * (static_cast<double>(table.size()) / rate.hz());
    std::vector<double> out(frames);
    for (std::size_t i = 0; i < frames; ++i)
        out[i] = table[wrap_index(static_cast<double>(i) * step, table.size())];
    return SampleBuffer::mono(rate, std::move(out));
}

SampleBuffer synth_from_frequencies(const WaveTable& table, std::span<const double> freqs,
                                    SampleRate rate) {
    const double per_hz = static_cast<double>(table.size()) / rate.hz();
    std::vector<double> out(freqs.size());
    RunningSum phase;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (!std::isfinite(freqs[i])) throw InvalidArgument("frequency track is not finite");
        out[i] = table[wrap_index(phase.value(), table.size())];
        phase.add(freqs[i] * per_hz);
    }
    return SampleBuffer::mono(rate, std::move(out));
}

std::vector<double> glide_frequencies(const GlideSpec& glide, std::size_t frames) {
    std::vector<double> f(frames, glide.f_start);
    if (frames < 2) return f;
    const double last = static_cast<double>(frames - 1);
    for (std::size_t i = 0; i < frames; ++i) {
        const double u = static_cast<double>(i) / last;
        if (glide.mode == GlideMode::linear)
            f[i] = glide.f_start + (glide.f_end - glide.f_start) * u;
        else
            f[i] = glide.f_start * std::pow(glide.f_end / glide.f_start, u);
    }
    return f;
}

SampleBuffer synth_glide(const WaveTable& table, const GlideSpec& glide, double delta,
                         SampleRate rate) {
    require_audible(glide.f_start, rate, "synth_glide");
    require_audible(glide.f_end, rate, "synth_glide");
    const auto freqs = glide_frequencies(glide, duration_to_samples(delta, rate));
    return synth_from_frequencies(table, freqs, rate);
}

std::vector<double> db_ramp(std::size_t frames, Decibels v, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be > 0");
    std::vector<double> g(frames, 1.0);
    if (frames < 2) return g;
    const double last = static_cast<double>(frames - 1);
    for (std::size_t i = 0; i < frames; ++i)
        g[i] = std::pow(10.0, v.value() / 20.0 * std::pow(static_cast<double>(i) / last, alpha));
    return g;
}

SampleBuffer amp_transition(const SampleBuffer& buf, Decibels v, double alpha) {
    const auto g = db_ramp(buf.frames(), v, alpha);
    SampleBuffer out = buf;
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        auto ch = out.channel(c);
        for (std::size_t i = 0; i < ch.size(); ++i) ch[i] *= g[i];
    }
    return out;
}

SampleBuffer amp_transition_linear(const SampleBuffer& buf, double a_start, double a_end) {
    if (!std::isfinite(a_start) || !std::isfinite(a_end))
        throw InvalidArgument("amplitudes must be finite");
    SampleBuffer out = buf;
    const std::size_t n = buf.frames();
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        auto ch = out.channel(c);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = n < 2 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            ch[i] *= a_start + (a_end - a_start) * u;
        }
    }
    return out;
}

} // namespace tonekit
