#include "tonekit/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tonekit {

OscillatorPattern::OscillatorPattern(WaveTable t, double f) : table(std::move(t)), freq(f) {
    if (!(freq > 0.0) || !std::isfinite(freq))
        throw InvalidArgument("modulator frequency must be > 0");
}

OscillatorPattern::OscillatorPattern(double f) : OscillatorPattern(build_wavetable(Shape::sine), f) {}

namespace modulation {

namespace {

void require_below_nyquist(double peak, SampleRate rate, const char* what) {
    if (!(peak < rate.nyquist()))
        throw InvalidArgument(std::string(what) + ": peak frequency " + std::to_string(peak) +
                              " Hz reaches Nyquist");
}

SampleBuffer apply_gain(const SampleBuffer& buf, const std::vector<double>& g) {
    SampleBuffer out = buf;
    for (std::size_t c = 0; c < out.channel_count(); ++c) {
        auto ch = out.channel(c);
        for (std::size_t i = 0; i < ch.size(); ++i) ch[i] *= g[i];
    }
    return out;
}

} // namespace

std::vector<double> pattern_sequence(const OscillatorPattern& p, std::size_t frames,
                                     SampleRate rate) {
    const std::size_t n = p.table.size();
    const double step = p.freq * (static_cast<double>(n) / rate.hz());
    std::vector<double> m(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const auto k = static_cast<std::size_t>(snap_floor(static_cast<double>(i) * step));
        m[i] = p.table[k % n];
    }
    return m;
}

SampleBuffer vibrato(const WaveTable& table, double f, double delta, SampleRate rate,
                     const OscillatorPattern& pattern, double nu) {
    if (!(f > 0.0)) throw InvalidArgument("vibrato: carrier frequency must be > 0");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("vibrato: depth must be >= 0");
    require_below_nyquist(f * std::pow(2.0, pattern.table.max() * nu / 12.0), rate, "vibrato");
    require_below_nyquist(f, rate, "vibrato");

    const std::size_t frames = duration_to_samples(delta, rate);
    auto freqs = pattern_sequence(pattern, frames, rate);
    for (double& x : freqs) x = f * std::pow(2.0, x * nu / 12.0);
    return synth_from_frequencies(table, freqs, rate);
}

SampleBuffer tremolo(const SampleBuffer& buf, const OscillatorPattern& pattern, Decibels v) {
    auto g = pattern_sequence(pattern, buf.frames(), buf.rate());
    for (double& x : g) x = std::pow(10.0, x * v.value() / 20.0);
    return apply_gain(buf, g);
}

SampleBuffer am(const SampleBuffer& buf, double f_mod, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("am: alpha must be >= 0");
    if (!(f_mod > 0.0)) throw InvalidArgument("am: modulator frequency must be > 0");
    require_below_nyquist(f_mod, buf.rate(), "am");
    std::vector<double> g(buf.frames());
    const double w = 2.0 * std::numbers::pi * f_mod / buf.rate().hz();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.0 + alpha * std::sin(w * static_cast<double>(i));
    return apply_gain(buf, g);
}

SampleBuffer am(const SampleBuffer& buf, const OscillatorPattern& pattern, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("am: alpha must be >= 0");
    auto g = pattern_sequence(pattern, buf.frames(), buf.rate());
    for (double& x : g) x = 1.0 + alpha * x;
    return apply_gain(buf, g);
}

SampleBuffer fm(const WaveTable& table, double f, const OscillatorPattern& pattern, double mu,
                double delta, SampleRate rate) {
    if (!(f > 0.0)) throw InvalidArgument("fm: carrier frequency must be > 0");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("fm: deviation must be >= 0");
    const double swing = std::max(std::fabs(pattern.table.max()), std::fabs(pattern.table.min()));
    require_below_nyquist(f + mu * swing, rate, "fm");
    require_below_nyquist(f, rate, "fm");

    const std::size_t frames = duration_to_samples(delta, rate);
    auto freqs = pattern_sequence(pattern, frames, rate);
    for (double& x : freqs) x = f + mu * x;
    return synth_from_frequencies(table, freqs, rate);
}

SampleBuffer fm(const WaveTable& table, double f, double f_mod, double mu, double delta,
                SampleRate rate) {
    return fm(table, f, OscillatorPattern(f_mod), mu, delta, rate);
}

double bessel_j(int k, double x) {
    if (!std::isfinite(x)) throw InvalidArgument("bessel_j: argument must be finite");
    if (k < 0) return (k % 2 == 0 ? 1.0 : -1.0) * bessel_j(-k, x);

    const long double half = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int i = 1; i <= k; ++i) term *= half / static_cast<long double>(i);
    long double sum = term;
    const long double q = -half * half;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<long double>(m) * static_cast<long double>(m + k));
        sum += term;
        if (std::fabs(term) <= 1e-19L * std::fabs(sum) && m > half) break;
        if (term == 0.0L) break;
    }
    return static_cast<double>(sum);
}

std::vector<double> adsr_envelope(const AdsrSpec& s, std::size_t frames, SampleRate rate) {
    for (double d : {s.attack, s.decay, s.release})
        if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidArgument("adsr: segment durations must be >= 0");
    if (!(s.sustain > 0.0 && s.sustain <= 1.0)) throw InvalidArgument("adsr: sustain must lie in (0, 1]");
    const bool expo = s.mode == EnvelopeMode::exponential;
    if (expo && !(s.floor > 0.0 && s.floor < s.sustain))
        throw InvalidArgument("adsr: floor must lie in (0, sustain)");

    const std::size_t na = duration_to_samples(s.attack, rate);
    const std::size_t nd = duration_to_samples(s.decay, rate);
    const std::size_t nr = duration_to_samples(s.release, rate);
    if (na + nd + nr > frames)
        throw InvalidArgument("adsr: attack + decay + release exceed the note duration");

    const double as = s.sustain, xi = s.floor;
    auto ramp = [](std::size_t i, std::size_t n) {
        return n < 2 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    };

    std::vector<double> env(frames, as);
    for (std::size_t i = 0; i < na; ++i) {
        const double u = ramp(i, na);
        env[i] = expo ? xi * std::pow(1.0 / xi, u) : u;
    }
    for (std::size_t i = 0; i < nd; ++i) {
        const double u = ramp(i, nd);
        env[na + i] = expo ? std::pow(as, u) : 1.0 - (1.0 - as) * u;
    }
    const std::size_t rs = frames - nr;
    for (std::size_t i = 0; i < nr; ++i) {
        const double u = ramp(i, nr);
        env[rs + i] = expo ? as * std::pow(xi / as, u) : as - as * u;
    }
    return env;
}

SampleBuffer adsr(const SampleBuffer& buf, const AdsrSpec& spec) {
    return apply_gain(buf, adsr_envelope(spec, buf.frames(), buf.rate()));
}

LinkedParameters link_parameters(double f, const LinkSpec& link) {
    auto eval = [f](const std::function<double(double)>& fn, const char* name) {
        if (!fn) throw InvalidArgument(std::string("link: ") + name + " mapping is missing");
        double v;
        try {
            v = fn(f);
        } catch (const std::exception& e) {
            throw InvalidArgument(std::string("link: ") + name + " undefined at " + std::to_string(f) +
                                  " Hz: " + e.what());
        }
        if (!std::isfinite(v))
            throw InvalidArgument(std::string("link: ") + name + " undefined at " + std::to_string(f) + " Hz");
        return v;
    };
    return {eval(link.mod_freq, "modulator frequency"), eval(link.depth_semitones, "vibrato depth"),
            eval(link.depth_db, "tremolo depth")};
}

} // namespace modulation
} // namespace tonekit
