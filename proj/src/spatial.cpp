#include "tonekit/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace tonekit::spatial {

namespace {

void require_subsonic(double v, const char* what) {
    if (!std::isfinite(v) || !(std::fabs(v) < kSpeedOfSound))
        throw InvalidArgument(std::string(what) + " speed must be subsonic");
}

void validate(const DopplerPath& p) {
    if (!(p.z0 > 0.0) || !std::isfinite(p.z0)) throw InvalidArgument("doppler: lateral distance must be > 0");
    if (!std::isfinite(p.y0)) throw InvalidArgument("doppler: initial offset must be finite");
    if (!(p.f0 > 0.0)) throw InvalidArgument("doppler: frequency must be > 0");
    require_subsonic(p.v_source, "source");
    require_subsonic(p.v_receiver, "receiver");
    if (!((p.v_receiver - p.v_source) / kSpeedOfSound + 1.0 > 0.0))
        throw InvalidArgument("doppler: relative speed leaves the amplitude factor undefined");
}

double path_offset(const DopplerPath& p, std::size_t i, SampleRate rate) {
    return p.y0 + (p.v_source - p.v_receiver) * static_cast<double>(i) / rate.hz();
}

} // namespace

InterauralCues itd_iid(const SourcePosition& pos) {
    if (!(pos.ear_spacing > 0.0)) throw InvalidArgument("ear spacing must be > 0");
    if (!std::isfinite(pos.x) || !std::isfinite(pos.y)) throw InvalidArgument("position must be finite");
    const double half = pos.ear_spacing / 2.0;
    const double d_right = std::hypot(pos.x - half, pos.y);
    const double d_left = std::hypot(pos.x + half, pos.y);
    if (d_right == 0.0 || d_left == 0.0) throw InvalidArgument("source coincides with an ear");
    return {(d_left - d_right) / kSpeedOfSound,
            Decibels(20.0 * (std::log10(d_right) - std::log10(d_left))), d_right, d_left};
}

double azimuth(const SourcePosition& pos) {
    if (pos.x == 0.0 && pos.y == 0.0) throw InvalidArgument("azimuth undefined at the origin");
    return std::atan2(pos.y, pos.x);
}

SampleBuffer localize(const SampleBuffer& buf, const SourcePosition& pos) {
    if (buf.channel_count() != 1) throw InvalidArgument("localize: mono input required");
    const auto cues = itd_iid(pos);
    // Truncate toward zero so mirrored sources get the same lag.
    const auto lag = static_cast<std::size_t>(snap_floor(std::fabs(cues.itd) * buf.rate().hz()));
    const bool right_leads = cues.d_left >= cues.d_right;
    const double ratio = right_leads ? cues.d_right / cues.d_left : cues.d_left / cues.d_right;

    const std::size_t n = buf.frames();
    std::vector<double> near(n + lag, 0.0), far(n + lag, 0.0);
    const auto src = buf.channel(0);
    for (std::size_t i = 0; i < n; ++i) {
        near[i] = src[i];
        far[i + lag] = ratio * src[i];
    }
    if (right_leads) return SampleBuffer::stereo(buf.rate(), std::move(far), std::move(near));
    return SampleBuffer::stereo(buf.rate(), std::move(near), std::move(far));
}

double doppler_shift(double f0, double v_source, double v_receiver) {
    require_subsonic(v_source, "source");
    require_subsonic(v_receiver, "receiver");
    return f0 * (kSpeedOfSound + v_receiver) / (kSpeedOfSound + v_source);
}

std::vector<double> doppler_frequencies(const DopplerPath& p, std::size_t frames, SampleRate rate) {
    validate(p);
    std::vector<double> f(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const double y = path_offset(p, i, rate);
        const double cosine = y / std::hypot(y, p.z0);
        f[i] = (kSpeedOfSound + p.v_receiver * cosine) / (kSpeedOfSound + p.v_source * cosine) * p.f0;
    }
    return f;
}

std::vector<double> doppler_amplitudes(const DopplerPath& p, std::size_t frames, SampleRate rate) {
    validate(p);
    const double factor = std::sqrt((p.v_receiver - p.v_source) / kSpeedOfSound + 1.0);
    std::vector<double> a(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const double y = path_offset(p, i, rate);
        a[i] = p.z0 / std::hypot(y, p.z0) * factor;
    }
    return a;
}

SampleBuffer doppler_render(const DopplerPath& path, const WaveTable& table, double delta,
                            SampleRate rate) {
    const std::size_t frames = duration_to_samples(delta, rate);
    const auto freqs = doppler_frequencies(path, frames, rate);
    for (double f : freqs)
        if (!(f < rate.nyquist())) throw InvalidArgument("doppler: shifted frequency reaches Nyquist");
    const auto amps = doppler_amplitudes(path, frames, rate);
    auto out = synth_from_frequencies(table, freqs, rate);
    auto ch = out.channel(0);
    for (std::size_t i = 0; i < frames; ++i) ch[i] *= amps[i];
    return out;
}

ImpulseResponse reverb_impulse(const ReverbSpec& spec, SampleRate rate) {
    if (!(spec.first_period > 0.0 && spec.first_period < spec.total))
        throw InvalidArgument("reverb: need 0 < first period < total time");
    if (!(spec.decay.value() < 0.0)) throw InvalidArgument("reverb: decay must be negative dB");
    if (spec.tail != NoiseColor::brown && spec.tail != NoiseColor::pink)
        throw InvalidArgument("reverb: tail noise must be brown or pink");
    const std::size_t n1 = duration_to_samples(spec.first_period, rate);
    const std::size_t nr = duration_to_samples(spec.total, rate);
    if (n1 < 1 || nr <= n1 + 1) throw InvalidArgument("reverb: periods too short for the sample rate");

    const double last = static_cast<double>(nr - 1);
    auto decay = [&](std::size_t i) {
        return std::pow(10.0, spec.decay.value() / 20.0 * static_cast<double>(i) / last);
    };

    std::vector<double> r(nr, 0.0);
    r[0] = 1.0;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double first = static_cast<double>(n1);
    for (std::size_t i = 1; i < n1; ++i) {
        const double p = static_cast<double>(i) / first;
        if (coin(rng) < p * p) r[i] = decay(i);
    }

    NoiseSpec tail;
    tail.color = spec.tail;
    tail.length = nr - n1;
    tail.rate = rate;
    tail.seed = spec.seed + 1;
    auto noise = noise::generate(tail);
    const double m = peak(noise);
    const auto tail_samples = noise.channel(0);
    for (std::size_t i = n1; i < nr; ++i) {
        const double v = m > 0.0 ? tail_samples[i - n1] / m : 0.0;
        r[i] = decay(i) * v;
    }
    return ImpulseResponse(std::move(r));
}

} // namespace tonekit::spatial
