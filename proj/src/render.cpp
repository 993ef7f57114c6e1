#include "tonekit/render.hpp"

#include <cmath>

#include "tonekit/modulation.hpp"
#include "tonekit/spatial.hpp"

namespace tonekit {

namespace {

SampleBuffer render_note(const NoteSpec& n, SampleRate rate) {
    const double f = resolve_pitch(n.pitch);
    SampleBuffer buf;
    if (n.glide_to) {
        buf = synth_glide(n.table, GlideSpec{f, resolve_pitch(*n.glide_to), n.glide_mode}, n.duration, rate);
    } else if (n.vibrato) {
        const OscillatorPattern p(build_wavetable(n.vibrato->shape), n.vibrato->freq);
        buf = modulation::vibrato(n.table, f, n.duration, rate, p, n.vibrato->semitones);
    } else if (n.fm) {
        buf = modulation::fm(n.table, f, n.fm->freq, n.fm->deviation_hz, n.duration, rate);
    } else {
        buf = synth_note(n.table, f, n.duration, rate);
    }
    if (n.am) buf = modulation::am(buf, n.am->freq, n.am->alpha);
    if (n.tremolo) {
        const OscillatorPattern p(build_wavetable(n.tremolo->shape), n.tremolo->freq);
        buf = modulation::tremolo(buf, p, Decibels(n.tremolo->db));
    }
    if (n.envelope) buf = modulation::adsr(buf, *n.envelope);
    buf = scale(buf, n.amplitude);
    if (n.position) buf = spatial::localize(buf, *n.position);
    return buf;
}

SampleBuffer render_noise(const NoiseEvent& n, SampleRate rate, std::uint64_t seed) {
    NoiseSpec spec;
    spec.color = n.color;
    spec.length = duration_to_samples(n.duration, rate);
    spec.rate = rate;
    spec.seed = seed;
    spec.f_min = n.f_min;
    spec.f_max = n.f_max;
    spec.loudness_curve = n.loudness_curve;
    // `amp` is the peak level of the event.
    const auto raw = noise::generate(spec);
    const double m = peak(raw);
    return m > 0.0 ? scale(raw, n.amplitude / m) : raw;
}

void add_into(SampleBuffer& out, const SampleBuffer& part, std::size_t start) {
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        const auto src = part.channel(part.channel_count() == 1 ? 0 : c);
        auto dst = out.channel(c);
        for (std::size_t i = 0; i < src.size(); ++i) dst[start + i] += src[i];
    }
}

} // namespace

SampleBuffer render_event(const ScoreEvent& event, std::size_t index, SampleRate rate, std::uint64_t seed) {
    try {
        return std::visit(
            [&](const auto& body) -> SampleBuffer {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, NoteSpec>) {
                    return render_note(body, rate);
                } else if constexpr (std::is_same_v<T, NoiseEvent>) {
                    return render_noise(body, rate, seed + index);
                } else {
                    return scale(spatial::doppler_render(body.path, body.table, body.duration, rate), body.amplitude);
                }
            },
            event.body);
    } catch (const RenderError&) {
        throw;
    } catch (const std::exception& e) {
        throw RenderError(index, event.line, e.what());
    }
}

SampleBuffer render(const Score& score) {
    const SampleRate rate = score.rate;
    std::vector<SampleBuffer> parts;
    std::vector<std::size_t> starts;
    parts.reserve(score.events.size());
    std::size_t frames = 0;
    bool stereo = false;
    for (std::size_t i = 0; i < score.events.size(); ++i) {
        const auto& ev = score.events[i];
        if (!(ev.onset >= 0.0) || !std::isfinite(ev.onset)) throw RenderError(i, ev.line, "onset must be >= 0");
        parts.push_back(render_event(ev, i, rate, score.seed));
        starts.push_back(duration_to_samples(ev.onset, rate));
        frames = std::max(frames, starts.back() + parts.back().frames());
        stereo = stereo || parts.back().channel_count() == 2;
    }
    SampleBuffer out(rate, stereo ? 2 : 1, frames);
    for (std::size_t i = 0; i < parts.size(); ++i) add_into(out, parts[i], starts[i]);

    for (std::size_t s = 0; s < score.post.size(); ++s) {
        std::visit(
            [&](const auto& stage) {
                using T = std::decay_t<decltype(stage)>;
                if constexpr (std::is_same_v<T, FilterStage>) {
                    out = filters::apply_iir(out, filters::design_iir(stage.kind, stage.fc, stage.bw));
                } else if constexpr (std::is_same_v<T, ReverbStage>) {
                    ReverbSpec spec = stage.spec;
                    // Past every event seed, so no stream is reused.
                    spec.seed = score.seed + score.events.size() + 2 * s;
                    out = filters::convolve_fft(out, spatial::reverb_impulse(spec, rate));
                } else {
                    if (!out.empty() && peak(out) > 0.0) out = normalize(out, stage.peak);
                }
            },
            score.post[s]);
    }
    return out;
}

} // namespace tonekit
